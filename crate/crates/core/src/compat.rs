//! Compatibility, conjunction, complementarity classification and
//! measurement sequences.

use std::fmt;

use serde::Serialize;

use crate::error::{GqtError, Result};
use crate::model::Model;
use crate::observable::{eigenstates_of_observable, Observable};
use crate::proposition::{compose, negate, DerivedProposition, Outcome, Proposition};
use crate::state::{same_space, StateId, StateRef};

/// A failed commutation `left∘right ≠ right∘left` at `state`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutationWitness {
    pub left: String,
    pub right: String,
    pub state: String,
    /// `left(right(state))`
    pub left_after_right: String,
    /// `right(left(state))`
    pub right_after_left: String,
}

impl fmt::Display for CommutationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{l}∘{r}({z}) = {a} but {r}∘{l}({z}) = {b}",
            l = self.left,
            r = self.right,
            z = self.state,
            a = self.left_after_right,
            b = self.right_after_left
        )
    }
}

/// Checks `PQ = QP`, `P¬Q = ¬QP`, `¬PQ = Q¬P` and `¬P¬Q = ¬Q¬P` pointwise.
/// Returns the first failing identity, if any.
pub fn is_compatible_propositions(
    p: &Proposition,
    q: &Proposition,
) -> Result<(bool, Option<CommutationWitness>)> {
    if !same_space(p.space(), q.space()) {
        return Err(GqtError::SpaceMismatch);
    }
    let np = negate(p);
    let nq = negate(q);
    let space = p.space();
    for (a, b) in [(p, q), (p, &nq), (&np, q), (&np, &nq)] {
        for z in space.ids() {
            let ab = a.yes().apply(b.yes().at(z));
            let ba = b.yes().apply(a.yes().at(z));
            if ab != ba {
                return Ok((
                    false,
                    Some(CommutationWitness {
                        left: a.name().to_string(),
                        right: b.name().to_string(),
                        state: space.name(z).to_string(),
                        left_after_right: space.display(ab).to_string(),
                        right_after_left: space.display(ba).to_string(),
                    }),
                ));
            }
        }
    }
    Ok((true, None))
}

pub fn compatible(p: &Proposition, q: &Proposition) -> Result<bool> {
    Ok(is_compatible_propositions(p, q)?.0)
}

fn require_compatible(p: &Proposition, q: &Proposition) -> Result<()> {
    if compatible(p, q)? {
        Ok(())
    } else {
        Err(GqtError::IncompatibleOperands {
            left: p.name().to_string(),
            right: q.name().to_string(),
        })
    }
}

/// `P AND Q`, defined only for compatible operands. Its yes-map is `PQ`.
pub fn conjunction(p: &Proposition, q: &Proposition) -> Result<DerivedProposition> {
    require_compatible(p, q)?;
    Ok(DerivedProposition {
        known_side: Outcome::Yes,
        known_map: compose(p.yes(), q.yes())?,
        provenance: format!("{} AND {}", p.name(), q.name()),
    })
}

/// `P OR Q = ¬(¬P AND ¬Q)`. Only the no-map is determined: `¬P ¬Q`.
pub fn adjunction(p: &Proposition, q: &Proposition) -> Result<DerivedProposition> {
    require_compatible(p, q)?;
    Ok(DerivedProposition {
        known_side: Outcome::No,
        known_map: compose(p.no(), q.no())?,
        provenance: format!("{} OR {}", p.name(), q.name()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PairClass {
    Compatible,
    Complementary,
    StronglyComplementary,
}

impl PairClass {
    pub fn is_compatible(self) -> bool {
        self == PairClass::Compatible
    }
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairClass::Compatible => "Compatible",
            PairClass::Complementary => "Complementary",
            PairClass::StronglyComplementary => "StronglyComplementary",
        })
    }
}

/// A state fixed by branch `a` of the first and branch `b` of the second
/// observable (value indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CommonEigenstate {
    pub state: StateId,
    pub a: usize,
    pub b: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairEvidence {
    /// First failing commutation among the family members, if any.
    pub witness: Option<CommutationWitness>,
    pub common: Vec<CommonEigenstate>,
}

/// All `(z, a, b)` with `A_a(z) = z` and `B_b(z) = z`, ordered by state
/// name then spectrum order.
pub fn common_eigenstates(a: &Observable, b: &Observable) -> Result<Vec<CommonEigenstate>> {
    if !same_space(a.space(), b.space()) {
        return Err(GqtError::SpaceMismatch);
    }
    let eb = eigenstates_of_observable(b);
    let mut out = Vec::new();
    for (z, ia) in eigenstates_of_observable(a) {
        for &(_, ib) in eb.iter().filter(|(w, _)| *w == z) {
            out.push(CommonEigenstate {
                state: z,
                a: ia,
                b: ib,
            });
        }
    }
    Ok(out)
}

/// Compatible iff every pair of family members is compatible; otherwise
/// complementary, and strongly so when no common eigenstate exists.
pub fn classify_pair(a: &Observable, b: &Observable) -> Result<(PairClass, PairEvidence)> {
    if !same_space(a.space(), b.space()) {
        return Err(GqtError::SpaceMismatch);
    }
    let mut witness = None;
    'outer: for p in a.family() {
        for q in b.family() {
            let (ok, w) = is_compatible_propositions(p, q)?;
            if !ok {
                witness = w;
                break 'outer;
            }
        }
    }
    let common = common_eigenstates(a, b)?;
    let class = match (&witness, common.is_empty()) {
        (None, _) => PairClass::Compatible,
        (Some(_), false) => PairClass::Complementary,
        (Some(_), true) => PairClass::StronglyComplementary,
    };
    Ok((class, PairEvidence { witness, common }))
}

/// Left fold of the named branches' yes-maps over `z`.
pub fn measure_sequence(model: &Model, z: StateRef, steps: &[(&str, &str)]) -> Result<StateRef> {
    if let StateRef::Proper(id) = z {
        if id.index() >= model.space().len() {
            return Err(GqtError::UnknownState(format!("#{}", id.index())));
        }
    }
    let branches = steps
        .iter()
        .map(|(obs, value)| model.observable(obs)?.branch(value))
        .collect::<Result<Vec<_>>>()?;
    Ok(branches
        .into_iter()
        .fold(z, |state, p| p.yes().apply(state)))
}
