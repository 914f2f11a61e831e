//! The law catalogue and its evaluation on concrete models.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::compat::{
    classify_pair, common_eigenstates, conjunction, is_compatible_propositions, measure_sequence,
    PairClass,
};
use crate::error::{GqtError, Result};
use crate::model::Model;
use crate::observable::Observable;
use crate::proposition::{compose, negate, Proposition, ONE, ZERO};
use crate::state::{StateId, StateRef};

/// Identities and theorems checked by [`check_laws`]. The ids are a frozen
/// public list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Law {
    Idempotence,
    NegationIdempotence,
    Annihilation,
    Consistency,
    ZeroAbsorbs,
    OneNeutral,
    OneAndP,
    PAndNegP,
    AndCommutes,
    DoubleNegation,
    PCompatNegP,
    OneCompatP,
    Exclusion,
    Completeness,
    CompatImpliesJointEigenstate,
    StrongcompImpliesComp,
    OrderIndependence,
}

impl Law {
    pub const ALL: [Law; 17] = [
        Law::Idempotence,
        Law::NegationIdempotence,
        Law::Annihilation,
        Law::Consistency,
        Law::ZeroAbsorbs,
        Law::OneNeutral,
        Law::OneAndP,
        Law::PAndNegP,
        Law::AndCommutes,
        Law::DoubleNegation,
        Law::PCompatNegP,
        Law::OneCompatP,
        Law::Exclusion,
        Law::Completeness,
        Law::CompatImpliesJointEigenstate,
        Law::StrongcompImpliesComp,
        Law::OrderIndependence,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Law::Idempotence => "PP=P",
            Law::NegationIdempotence => "negPnegP=negP",
            Law::Annihilation => "P·negP=0",
            Law::Consistency => "consistency",
            Law::ZeroAbsorbs => "0P=P0=0",
            Law::OneNeutral => "1P=P1=P",
            Law::OneAndP => "1ANDP=P",
            Law::PAndNegP => "PANDnegP=0",
            Law::AndCommutes => "PANDQ=QANDP",
            Law::DoubleNegation => "negnegP=P",
            Law::PCompatNegP => "P-compat-negP",
            Law::OneCompatP => "1-compat-P",
            Law::Exclusion => "exclusion",
            Law::Completeness => "completeness",
            Law::CompatImpliesJointEigenstate => "compat-implies-joint-eigenstate",
            Law::StrongcompImpliesComp => "strongcomp-implies-comp",
            Law::OrderIndependence => "order-independence",
        }
    }

    pub fn from_id(id: &str) -> Option<Law> {
        Law::ALL.into_iter().find(|l| l.id() == id)
    }

    pub fn statement(self) -> &'static str {
        match self {
            Law::Idempotence => "P(P(z)) = P(z)",
            Law::NegationIdempotence => "¬P(¬P(z)) = ¬P(z)",
            Law::Annihilation => "P(¬P(z)) = ¬P(P(z)) = o",
            Law::Consistency => "P(z) and ¬P(z) are not both o",
            Law::ZeroAbsorbs => "0P = P0 = 0",
            Law::OneNeutral => "1P = P1 = P",
            Law::OneAndP => "1 AND P = P",
            Law::PAndNegP => "P AND ¬P = 0",
            Law::AndCommutes => "P AND Q = Q AND P for compatible P, Q",
            Law::DoubleNegation => "¬¬P = P",
            Law::PCompatNegP => "P and ¬P are compatible",
            Law::OneCompatP => "1 and 0 are compatible with every P",
            Law::Exclusion => "A_a A_b = 0 for a ≠ b",
            Law::Completeness => "some A_a(z) ≠ o",
            Law::CompatImpliesJointEigenstate => {
                "compatible A, B: every z reaches a common eigenstate B_b A_a(z)"
            }
            Law::StrongcompImpliesComp => "no common eigenstate implies not compatible",
            Law::OrderIndependence => "compatible A, B: B_b A_a(z) = A_a B_b(z)",
        }
    }

    fn scope(self) -> Scope {
        match self {
            Law::AndCommutes => Scope::PropositionPair,
            Law::Exclusion | Law::Completeness => Scope::Observable,
            Law::CompatImpliesJointEigenstate | Law::OrderIndependence => Scope::ObservablePair,
            Law::StrongcompImpliesComp => Scope::ObservablePairGlobal,
            _ => Scope::Proposition,
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl Serialize for Law {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Scope {
    Proposition,
    PropositionPair,
    Observable,
    ObservablePair,
    ObservablePairGlobal,
}

/// One failed law with the subjects it failed for and the witness state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawViolation {
    pub law: Law,
    pub subjects: Vec<String>,
    /// Spectrum values involved, when the law quantifies over them.
    pub values: Vec<String>,
    pub states: Vec<String>,
    pub detail: String,
}

impl LawViolation {
    /// Re-evaluates the law for the same subjects at the witness state.
    /// True iff the violation is reproduced.
    pub fn replay(&self, model: &Model) -> bool {
        let state = match self.states.first() {
            Some(name) => match model.space().lookup(name) {
                Ok(id) => Some(id),
                Err(_) => return false,
            },
            None => None,
        };
        let subjects: Vec<&str> = self.subjects.iter().map(String::as_str).collect();
        matches!(evaluate(model, self.law, &subjects, state), Ok(Some(_)))
    }
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.law, self.subjects.join(", "))?;
        if !self.states.is_empty() {
            write!(f, " at {}", self.states.join(", "))?;
        }
        if !self.values.is_empty() {
            write!(f, " values {}", self.values.join(", "))?;
        }
        write!(f, ": {}", self.detail)
    }
}

/// A finding that is not a law violation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Note {
    pub kind: &'static str,
    pub subjects: Vec<String>,
    pub detail: String,
}

pub const COMPLEMENTARY_WITHOUT_GAP: &str = "complementary-without-gap";

impl fmt::Display for Note {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}]: {}",
            self.kind,
            self.subjects.join(", "),
            self.detail
        )
    }
}

struct Finding {
    values: Vec<String>,
    detail: String,
}

fn found(detail: String) -> Option<Finding> {
    Some(Finding {
        values: Vec::new(),
        detail,
    })
}

fn commutes_at(p: &Proposition, q: &Proposition, z: StateId) -> bool {
    let (np, nq) = (negate(p), negate(q));
    let commute = |a: &Proposition, b: &Proposition| {
        a.yes().apply(b.yes().at(z)) == b.yes().apply(a.yes().at(z))
    };
    commute(p, q) && commute(p, &nq) && commute(&np, q) && commute(&np, &nq)
}

fn observables_compatible(a: &Observable, b: &Observable) -> Result<bool> {
    for p in a.family() {
        for q in b.family() {
            if !is_compatible_propositions(p, q)?.0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn proposition_law(
    model: &Model,
    law: Law,
    p: &Proposition,
    z: StateId,
) -> Result<Option<Finding>> {
    let space = model.space();
    let show = |s: StateRef| space.display(s).to_string();
    let zr = StateRef::Proper(z);
    let (y, n) = (p.yes(), p.no());
    Ok(match law {
        Law::Idempotence => {
            let once = y.at(z);
            let twice = y.apply(once);
            (once != twice).then(|| format!("P(z) = {} but P(P(z)) = {}", show(once), show(twice)))
        }
        Law::NegationIdempotence => {
            let once = n.at(z);
            let twice = n.apply(once);
            (once != twice)
                .then(|| format!("¬P(z) = {} but ¬P(¬P(z)) = {}", show(once), show(twice)))
        }
        Law::Annihilation => {
            let yn = y.apply(n.at(z));
            let ny = n.apply(y.at(z));
            (!yn.is_zero() || !ny.is_zero())
                .then(|| format!("P(¬P(z)) = {}, ¬P(P(z)) = {}", show(yn), show(ny)))
        }
        Law::Consistency => {
            (y.at(z).is_zero() && n.at(z).is_zero()).then(|| "P(z) = ¬P(z) = o".to_string())
        }
        Law::ZeroAbsorbs => {
            let zero = model.zero().yes();
            let left = compose(zero, y)?.at(z);
            let right = compose(y, zero)?.at(z);
            (!left.is_zero() || !right.is_zero())
                .then(|| format!("0P(z) = {}, P0(z) = {}", show(left), show(right)))
        }
        Law::OneNeutral => {
            let one = model.one().yes();
            let left = compose(one, y)?.at(z);
            let right = compose(y, one)?.at(z);
            let expected = y.at(z);
            (left != expected || right != expected).then(|| {
                format!(
                    "P(z) = {} but 1P(z) = {}, P1(z) = {}",
                    show(expected),
                    show(left),
                    show(right)
                )
            })
        }
        Law::OneAndP => match conjunction(model.one(), p) {
            Ok(d) => {
                let got = d.known_map.apply(zr);
                (got != y.at(z))
                    .then(|| format!("(1 AND P)(z) = {} but P(z) = {}", show(got), show(y.at(z))))
            }
            Err(GqtError::IncompatibleOperands { .. }) => {
                (!commutes_at(model.one(), p, z)).then(|| "1 and P are not compatible".to_string())
            }
            Err(e) => return Err(e),
        },
        Law::PAndNegP => {
            let np = negate(p);
            match conjunction(p, &np) {
                Ok(d) => {
                    let got = d.known_map.apply(zr);
                    (!got.is_zero()).then(|| format!("(P AND ¬P)(z) = {}", show(got)))
                }
                Err(GqtError::IncompatibleOperands { .. }) => {
                    (!commutes_at(p, &np, z)).then(|| "P and ¬P are not compatible".to_string())
                }
                Err(e) => return Err(e),
            }
        }
        Law::DoubleNegation => {
            let nn = negate(&negate(p));
            if nn.name() != p.name() {
                Some(format!("¬¬P is named {:?}", nn.name()))
            } else {
                (nn.yes().at(z) != y.at(z) || nn.no().at(z) != n.at(z))
                    .then(|| "¬¬P differs from P".to_string())
            }
        }
        Law::PCompatNegP => {
            (!commutes_at(p, &negate(p), z)).then(|| "P and ¬P do not commute".to_string())
        }
        Law::OneCompatP => {
            let one = commutes_at(model.one(), p, z);
            let zero = commutes_at(model.zero(), p, z);
            (!one || !zero).then(|| format!("commutes with 1: {one}, with 0: {zero}"))
        }
        _ => unreachable!("not a proposition law"),
    }
    .and_then(found))
}

fn and_commutes(
    model: &Model,
    p: &Proposition,
    q: &Proposition,
    z: StateId,
) -> Result<Option<Finding>> {
    if !is_compatible_propositions(p, q)?.0 {
        return Ok(None);
    }
    let pq = conjunction(p, q)?.known_map.at(z);
    let qp = conjunction(q, p)?.known_map.at(z);
    let space = model.space();
    Ok((pq != qp).then(|| Finding {
        values: Vec::new(),
        detail: format!(
            "(P AND Q)(z) = {} but (Q AND P)(z) = {}",
            space.display(pq),
            space.display(qp)
        ),
    }))
}

fn observable_law(model: &Model, law: Law, a: &Observable, z: StateId) -> Option<Finding> {
    let space = model.space();
    match law {
        Law::Exclusion => {
            for (va, pa) in a.branches() {
                for (vb, pb) in a.branches() {
                    if va == vb {
                        continue;
                    }
                    let w = pa.yes().apply(pb.yes().at(z));
                    if !w.is_zero() {
                        return Some(Finding {
                            values: vec![va.to_string(), vb.to_string()],
                            detail: format!("A_{va} A_{vb}(z) = {}", space.display(w)),
                        });
                    }
                }
            }
            None
        }
        Law::Completeness => a
            .family()
            .iter()
            .all(|p| p.yes().at(z).is_zero())
            .then(|| Finding {
                values: Vec::new(),
                detail: "no value is possible".to_string(),
            }),
        _ => unreachable!("not an observable law"),
    }
}

fn observable_pair_law(
    model: &Model,
    law: Law,
    a: &Observable,
    b: &Observable,
    z: StateId,
) -> Result<Option<Finding>> {
    if !observables_compatible(a, b)? {
        return Ok(None);
    }
    let space = model.space();
    let zr = StateRef::Proper(z);
    match law {
        Law::CompatImpliesJointEigenstate => {
            let mut reached = false;
            for (va, pa) in a.branches() {
                for (vb, pb) in b.branches() {
                    let w = pb.yes().apply(pa.yes().apply(zr));
                    if w.is_zero() {
                        continue;
                    }
                    reached = true;
                    if pa.yes().apply(w) != w || pb.yes().apply(w) != w {
                        return Ok(Some(Finding {
                            values: vec![va.to_string(), vb.to_string()],
                            detail: format!(
                                "B_{vb} A_{va}(z) = {} is not a common eigenstate",
                                space.display(w)
                            ),
                        }));
                    }
                }
            }
            Ok((!reached).then(|| Finding {
                values: Vec::new(),
                detail: "no common eigenstate is reachable".to_string(),
            }))
        }
        Law::OrderIndependence => {
            for va in a.spectrum() {
                for vb in b.spectrum() {
                    let ab = measure_sequence(model, zr, &[(a.name(), va), (b.name(), vb)])?;
                    let ba = measure_sequence(model, zr, &[(b.name(), vb), (a.name(), va)])?;
                    if ab != ba {
                        return Ok(Some(Finding {
                            values: vec![va.clone(), vb.clone()],
                            detail: format!(
                                "A then B gives {}, B then A gives {}",
                                space.display(ab),
                                space.display(ba)
                            ),
                        }));
                    }
                }
            }
            Ok(None)
        }
        _ => unreachable!("not an observable pair law"),
    }
}

fn strongcomp_implies_comp(a: &Observable, b: &Observable) -> Result<Option<Finding>> {
    if !common_eigenstates(a, b)?.is_empty() {
        return Ok(None);
    }
    Ok(observables_compatible(a, b)?.then(|| Finding {
        values: Vec::new(),
        detail: "no common eigenstate, yet all family members commute".to_string(),
    }))
}

fn evaluate(
    model: &Model,
    law: Law,
    subjects: &[&str],
    state: Option<StateId>,
) -> Result<Option<Finding>> {
    let need_state = || state.ok_or_else(|| GqtError::UnknownState("(witness)".to_string()));
    match (law.scope(), subjects) {
        (Scope::Proposition, [p]) => {
            proposition_law(model, law, &model.proposition(p)?, need_state()?)
        }
        (Scope::PropositionPair, [p, q]) => and_commutes(
            model,
            &model.proposition(p)?,
            &model.proposition(q)?,
            need_state()?,
        ),
        (Scope::Observable, [a]) => Ok(observable_law(
            model,
            law,
            model.observable(a)?,
            need_state()?,
        )),
        (Scope::ObservablePair, [a, b]) => observable_pair_law(
            model,
            law,
            model.observable(a)?,
            model.observable(b)?,
            need_state()?,
        ),
        (Scope::ObservablePairGlobal, [a, b]) => {
            strongcomp_implies_comp(model.observable(a)?, model.observable(b)?)
        }
        _ => Err(GqtError::UnknownProposition(subjects.join(", "))),
    }
}

fn subject_lists(model: &Model, scope: Scope) -> Vec<Vec<String>> {
    let props: Vec<String> = model.propositions().map(|p| p.name().to_string()).collect();
    let obs: Vec<String> = model.observables().map(|a| a.name().to_string()).collect();
    let pairs = |names: &[String]| {
        let mut out = Vec::new();
        for i in 0..names.len() {
            for j in (i + 1)..names.len() {
                out.push(vec![names[i].clone(), names[j].clone()]);
            }
        }
        out
    };
    match scope {
        Scope::Proposition => [ONE.to_string(), ZERO.to_string()]
            .into_iter()
            .chain(props)
            .map(|p| vec![p])
            .collect(),
        Scope::PropositionPair => pairs(&props),
        Scope::Observable => obs.into_iter().map(|a| vec![a]).collect(),
        Scope::ObservablePair | Scope::ObservablePairGlobal => pairs(&obs),
    }
}

/// Checks every law exhaustively over states. For each law and subject
/// tuple the first failing state (in declaration order) is the witness.
pub fn check_laws(model: &Model) -> Vec<LawViolation> {
    let mut out = Vec::new();
    for law in Law::ALL {
        let scope = law.scope();
        for subjects in subject_lists(model, scope) {
            let refs: Vec<&str> = subjects.iter().map(String::as_str).collect();
            let states: Vec<Option<StateId>> = if scope == Scope::ObservablePairGlobal {
                vec![None]
            } else {
                model.space().ids().map(Some).collect()
            };
            for state in states {
                let finding =
                    evaluate(model, law, &refs, state).expect("subjects are taken from the model");
                if let Some(f) = finding {
                    out.push(LawViolation {
                        law,
                        subjects: subjects.clone(),
                        values: f.values,
                        states: state
                            .map(|z| model.space().name(z).to_string())
                            .into_iter()
                            .collect(),
                        detail: f.detail,
                    });
                    break;
                }
            }
        }
    }
    out
}

/// Complementary pairs where every value of both observables still has a
/// common eigenstate.
pub fn check_notes(model: &Model) -> Vec<Note> {
    let obs: Vec<&Observable> = model.observables().collect();
    let mut out = Vec::new();
    for i in 0..obs.len() {
        for j in (i + 1)..obs.len() {
            let (a, b) = (obs[i], obs[j]);
            let Ok((class, evidence)) = classify_pair(a, b) else {
                continue;
            };
            if class != PairClass::Complementary {
                continue;
            }
            let a_covered =
                (0..a.spectrum().len()).all(|k| evidence.common.iter().any(|c| c.a == k));
            let b_covered =
                (0..b.spectrum().len()).all(|k| evidence.common.iter().any(|c| c.b == k));
            if a_covered && b_covered {
                out.push(Note {
                    kind: COMPLEMENTARY_WITHOUT_GAP,
                    subjects: vec![a.name().to_string(), b.name().to_string()],
                    detail: "every value of both observables has a common eigenstate".to_string(),
                });
            }
        }
    }
    out
}
