//! Propositions as pairs of idempotent, mutually annihilating state maps.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{GqtError, Result};
use crate::state::{same_space, StateId, StateRef, StateSpace};
use crate::validation::{ModelLaw, Report, Violation};

/// Name of the always-true proposition.
pub const ONE: &str = "ONE";
/// Name of the never-true proposition.
pub const ZERO: &str = "ZERO";
/// Prefix marking a negated proposition name.
pub const NEGATION_PREFIX: char = '¬';

/// Measurement result of a proposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Yes,
    No,
}

impl Outcome {
    pub fn flip(self) -> Outcome {
        match self {
            Outcome::Yes => Outcome::No,
            Outcome::No => Outcome::Yes,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Yes => "yes",
            Outcome::No => "no",
        })
    }
}

/// Qualitative outcome classification in place of probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ModalStatus {
    Impossible,
    Possible,
    Certain,
}

impl fmt::Display for ModalStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModalStatus::Impossible => "impossible",
            ModalStatus::Possible => "possible",
            ModalStatus::Certain => "certain",
        })
    }
}

/// A total map on the states of a space. The zero state is always fixed.
#[derive(Clone)]
pub struct PropMap {
    space: Arc<StateSpace>,
    targets: Vec<StateRef>,
}

impl PropMap {
    /// Builds a map from one target per proper state, in declaration order.
    pub fn new(space: Arc<StateSpace>, targets: Vec<StateRef>) -> Result<Self> {
        if targets.len() != space.len() {
            return Err(GqtError::NotTotal {
                expected: space.len(),
                got: targets.len(),
            });
        }
        for (i, t) in targets.iter().enumerate() {
            if let StateRef::Proper(id) = t {
                if id.index() >= space.len() {
                    return Err(GqtError::TargetOutOfRange(i));
                }
            }
        }
        Ok(PropMap { space, targets })
    }

    pub fn from_fn(space: Arc<StateSpace>, f: impl FnMut(StateId) -> StateRef) -> Self {
        let targets = space.ids().map(f).collect();
        PropMap { space, targets }
    }

    pub fn identity(space: Arc<StateSpace>) -> Self {
        Self::from_fn(space, StateRef::Proper)
    }

    /// The constant-zero map.
    pub fn zero(space: Arc<StateSpace>) -> Self {
        Self::from_fn(space, |_| StateRef::Zero)
    }

    pub fn space(&self) -> &Arc<StateSpace> {
        &self.space
    }

    pub fn targets(&self) -> &[StateRef] {
        &self.targets
    }

    pub fn apply(&self, z: StateRef) -> StateRef {
        match z {
            StateRef::Proper(id) => self.targets[id.index()],
            StateRef::Zero => StateRef::Zero,
        }
    }

    pub fn at(&self, id: StateId) -> StateRef {
        self.targets[id.index()]
    }

    /// Returns a copy with a single entry replaced.
    pub fn with_entry(&self, id: StateId, target: StateRef) -> Self {
        let mut targets = self.targets.clone();
        targets[id.index()] = target;
        PropMap {
            space: Arc::clone(&self.space),
            targets,
        }
    }

    pub fn is_constant_zero(&self) -> bool {
        self.targets.iter().all(|t| t.is_zero())
    }

    pub fn is_idempotent(&self) -> bool {
        self.space
            .ids()
            .all(|z| self.apply(self.at(z)) == self.at(z))
    }

    pub(crate) fn same_space_as(&self, other: &PropMap) -> bool {
        same_space(&self.space, &other.space)
    }
}

impl PartialEq for PropMap {
    fn eq(&self, other: &Self) -> bool {
        self.same_space_as(other) && self.targets == other.targets
    }
}

impl Eq for PropMap {}

impl fmt::Debug for PropMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.space
                    .ids()
                    .map(|z| (self.space.name(z), self.space.display(self.at(z)))),
            )
            .finish()
    }
}

/// Pointwise composition `f ∘ g`, i.e. `g` is applied first.
pub fn compose(f: &PropMap, g: &PropMap) -> Result<PropMap> {
    if !f.same_space_as(g) {
        return Err(GqtError::SpaceMismatch);
    }
    Ok(PropMap::from_fn(Arc::clone(&f.space), |z| f.apply(g.at(z))))
}

/// A yes/no observable: the post-measurement maps for both outcomes.
#[derive(Clone, PartialEq, Eq)]
pub struct Proposition {
    name: String,
    yes: PropMap,
    no: PropMap,
}

impl Proposition {
    pub fn new(name: impl Into<String>, yes: PropMap, no: PropMap) -> Result<Self> {
        if !yes.same_space_as(&no) {
            return Err(GqtError::SpaceMismatch);
        }
        Ok(Proposition {
            name: name.into(),
            yes,
            no,
        })
    }

    /// `ONE`: always true, leaves every state untouched.
    pub fn one(space: Arc<StateSpace>) -> Self {
        Proposition {
            name: ONE.to_string(),
            yes: PropMap::identity(Arc::clone(&space)),
            no: PropMap::zero(space),
        }
    }

    /// `ZERO`: never true.
    pub fn zero(space: Arc<StateSpace>) -> Self {
        negate(&Self::one(space))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn yes(&self) -> &PropMap {
        &self.yes
    }

    pub fn no(&self) -> &PropMap {
        &self.no
    }

    pub fn map(&self, outcome: Outcome) -> &PropMap {
        match outcome {
            Outcome::Yes => &self.yes,
            Outcome::No => &self.no,
        }
    }

    pub fn space(&self) -> &Arc<StateSpace> {
        self.yes.space()
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        Proposition {
            name: name.into(),
            ..self.clone()
        }
    }

    /// Same maps, ignoring the name.
    pub fn same_maps(&self, other: &Proposition) -> bool {
        self.yes == other.yes && self.no == other.no
    }
}

impl fmt::Debug for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Proposition")
            .field("name", &self.name)
            .field("yes", &self.yes)
            .field("no", &self.no)
            .finish()
    }
}

pub(crate) fn negated_name(name: &str) -> String {
    match name {
        ONE => ZERO.to_string(),
        ZERO => ONE.to_string(),
        _ => match name.strip_prefix(NEGATION_PREFIX) {
            Some(inner) => inner.to_string(),
            None => format!("{NEGATION_PREFIX}{name}"),
        },
    }
}

/// Swaps the yes and no maps.
pub fn negate(p: &Proposition) -> Proposition {
    Proposition {
        name: negated_name(&p.name),
        yes: p.no.clone(),
        no: p.yes.clone(),
    }
}

pub fn apply(p: &Proposition, outcome: Outcome, z: StateRef) -> Result<StateRef> {
    if let StateRef::Proper(id) = z {
        if id.index() >= p.space().len() {
            return Err(GqtError::UnknownState(format!("#{}", id.index())));
        }
    }
    Ok(p.map(outcome).apply(z))
}

pub fn modal_status(p: &Proposition, z: StateRef) -> Result<ModalStatus> {
    let StateRef::Proper(id) = z else {
        return Err(GqtError::ZeroState);
    };
    if id.index() >= p.space().len() {
        return Err(GqtError::UnknownState(format!("#{}", id.index())));
    }
    Ok(if p.yes.at(id).is_zero() {
        ModalStatus::Impossible
    } else if p.no.at(id).is_zero() {
        ModalStatus::Certain
    } else {
        ModalStatus::Possible
    })
}

/// Fixed points of the yes- and no-maps, ordered by state name.
pub fn eigenstates_of_proposition(p: &Proposition) -> Vec<(StateId, Outcome)> {
    let space = p.space();
    let mut out: Vec<(StateId, Outcome)> = space
        .ids()
        .flat_map(|z| {
            [Outcome::Yes, Outcome::No]
                .into_iter()
                .filter(move |&o| p.map(o).at(z) == StateRef::Proper(z))
                .map(move |o| (z, o))
        })
        .collect();
    out.sort_by(|a, b| {
        space
            .sort_key(a.0)
            .cmp(space.sort_key(b.0))
            .then(a.1.cmp(&b.1))
    });
    out
}

/// Checks idempotence of both maps, mutual annihilation and consistency.
pub fn validate_proposition(p: &Proposition, space: &Arc<StateSpace>) -> Result<Report> {
    if !same_space(p.space(), space) {
        return Err(GqtError::SpaceMismatch);
    }
    let mut report = Report::default();
    let violation = |law, z: StateId, detail: String| Violation {
        law,
        subject: p.name.clone(),
        values: Vec::new(),
        state: Some(space.name(z).to_string()),
        detail,
    };
    for z in space.ids() {
        let y = p.yes.at(z);
        let n = p.no.at(z);
        let yy = p.yes.apply(y);
        if yy != y {
            report.push(violation(
                ModelLaw::IdempotenceYes,
                z,
                format!(
                    "yes(yes({})) = {} but yes({}) = {}",
                    space.name(z),
                    space.display(yy),
                    space.name(z),
                    space.display(y)
                ),
            ));
        }
        let nn = p.no.apply(n);
        if nn != n {
            report.push(violation(
                ModelLaw::IdempotenceNo,
                z,
                format!(
                    "no(no({})) = {} but no({}) = {}",
                    space.name(z),
                    space.display(nn),
                    space.name(z),
                    space.display(n)
                ),
            ));
        }
        let ny = p.no.apply(y);
        if !ny.is_zero() {
            report.push(violation(
                ModelLaw::Annihilation,
                z,
                format!(
                    "no(yes({})) = {}, expected o",
                    space.name(z),
                    space.display(ny)
                ),
            ));
        }
        let yn = p.yes.apply(n);
        if !yn.is_zero() {
            report.push(violation(
                ModelLaw::Annihilation,
                z,
                format!(
                    "yes(no({})) = {}, expected o",
                    space.name(z),
                    space.display(yn)
                ),
            ));
        }
        if y.is_zero() && n.is_zero() {
            report.push(violation(
                ModelLaw::Consistency,
                z,
                "both outcomes are impossible".to_string(),
            ));
        }
    }
    Ok(report)
}

/// Result of a conjunction or adjunction: only one side's map is determined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedProposition {
    pub known_side: Outcome,
    pub known_map: PropMap,
    pub provenance: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space() -> Arc<StateSpace> {
        StateSpace::new(["a", "b", "c"]).unwrap()
    }

    fn refs(space: &Arc<StateSpace>, names: &[Option<&str>]) -> PropMap {
        let targets = names
            .iter()
            .map(|n| match n {
                Some(n) => StateRef::Proper(space.lookup(n).unwrap()),
                None => StateRef::Zero,
            })
            .collect();
        PropMap::new(Arc::clone(space), targets).unwrap()
    }

    /// Yes-eigen {a}, no-eigen {b}, c contingent.
    fn sample(space: &Arc<StateSpace>) -> Proposition {
        Proposition::new(
            "P",
            refs(space, &[Some("a"), None, Some("a")]),
            refs(space, &[None, Some("b"), Some("b")]),
        )
        .unwrap()
    }

    #[test]
    fn totality_is_structural() {
        let s = space();
        let err = PropMap::new(Arc::clone(&s), vec![StateRef::Zero]).unwrap_err();
        assert_eq!(
            err,
            GqtError::NotTotal {
                expected: 3,
                got: 1
            }
        );
        let err = PropMap::new(
            Arc::clone(&s),
            vec![StateRef::Proper(StateId(7)), StateRef::Zero, StateRef::Zero],
        )
        .unwrap_err();
        assert_eq!(err, GqtError::TargetOutOfRange(0));
    }

    #[test]
    fn builtins_are_valid_and_negations_of_each_other() {
        let s = space();
        let one = Proposition::one(Arc::clone(&s));
        let zero = Proposition::zero(Arc::clone(&s));
        assert!(validate_proposition(&one, &s).unwrap().is_empty());
        assert!(validate_proposition(&zero, &s).unwrap().is_empty());
        assert_eq!(negate(&one), zero);
        assert_eq!(zero.name(), ZERO);
        assert_eq!(negate(&zero), one);
    }

    #[test]
    fn negation_names() {
        let s = space();
        let p = sample(&s);
        let np = negate(&p);
        assert_eq!(np.name(), "¬P");
        assert_eq!(negate(&np), p);
        assert_eq!(np.yes(), p.no());
    }

    #[test]
    fn apply_one_zero() {
        let s = space();
        let one = Proposition::one(Arc::clone(&s));
        let zero = Proposition::zero(Arc::clone(&s));
        for z in s.refs() {
            assert_eq!(apply(&one, Outcome::Yes, z).unwrap(), z);
            assert_eq!(apply(&zero, Outcome::Yes, z).unwrap(), StateRef::Zero);
        }
        assert!(apply(&one, Outcome::Yes, StateRef::Proper(StateId(9))).is_err());
    }

    #[test]
    fn composition_identities() {
        let s = space();
        let p = sample(&s);
        let one = Proposition::one(Arc::clone(&s));
        assert_eq!(compose(p.yes(), p.yes()).unwrap(), *p.yes());
        assert!(compose(p.yes(), p.no()).unwrap().is_constant_zero());
        assert!(compose(p.no(), p.yes()).unwrap().is_constant_zero());
        assert_eq!(compose(one.yes(), p.yes()).unwrap(), *p.yes());
        assert_eq!(compose(p.yes(), one.yes()).unwrap(), *p.yes());
        let other = StateSpace::new(["x", "y", "z"]).unwrap();
        let foreign = PropMap::identity(other);
        assert_eq!(
            compose(p.yes(), &foreign).unwrap_err(),
            GqtError::SpaceMismatch
        );
    }

    #[test]
    fn modal_statuses() {
        let s = space();
        let p = sample(&s);
        let id = |n| StateRef::Proper(s.lookup(n).unwrap());
        assert_eq!(modal_status(&p, id("a")).unwrap(), ModalStatus::Certain);
        assert_eq!(modal_status(&p, id("b")).unwrap(), ModalStatus::Impossible);
        assert_eq!(modal_status(&p, id("c")).unwrap(), ModalStatus::Possible);
        assert_eq!(
            modal_status(&p, StateRef::Zero).unwrap_err(),
            GqtError::ZeroState
        );
        let zero = Proposition::zero(Arc::clone(&s));
        assert_eq!(
            modal_status(&zero, id("c")).unwrap(),
            ModalStatus::Impossible
        );
    }

    #[test]
    fn eigenstates_sorted_by_name() {
        let s = StateSpace::new(["c", "b", "a"]).unwrap();
        let one = Proposition::one(Arc::clone(&s));
        let names: Vec<_> = eigenstates_of_proposition(&one)
            .into_iter()
            .map(|(z, o)| (s.name(z).to_string(), o))
            .collect();
        assert_eq!(
            names,
            vec![
                ("a".to_string(), Outcome::Yes),
                ("b".to_string(), Outcome::Yes),
                ("c".to_string(), Outcome::Yes)
            ]
        );
        let zero = Proposition::zero(Arc::clone(&s));
        assert!(eigenstates_of_proposition(&zero)
            .iter()
            .all(|&(_, o)| o == Outcome::No));
    }

    #[test]
    fn each_law_is_reported_with_witness() {
        let s = space();
        let p = sample(&s);
        assert!(validate_proposition(&p, &s).unwrap().is_empty());

        // c -> c on yes: c becomes a yes fixed point while no(c) = b.
        let broken = Proposition::new(
            "P",
            p.yes().with_entry(StateId(2), StateRef::Proper(StateId(2))),
            p.no().clone(),
        )
        .unwrap();
        let r = validate_proposition(&broken, &s).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.violations[0].law, ModelLaw::Annihilation);
        assert_eq!(r.violations[0].state.as_deref(), Some("c"));

        // a -> c on yes: yes(yes(a)) = yes(c) = a != c.
        let broken = Proposition::new(
            "P",
            p.yes().with_entry(StateId(0), StateRef::Proper(StateId(2))),
            p.no().clone(),
        )
        .unwrap();
        let r = validate_proposition(&broken, &s).unwrap();
        assert!(r.has_law(ModelLaw::IdempotenceYes));

        let broken = Proposition::new(
            "P",
            p.yes().with_entry(StateId(2), StateRef::Zero),
            p.no().with_entry(StateId(2), StateRef::Zero),
        )
        .unwrap();
        let r = validate_proposition(&broken, &s).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.violations[0].law, ModelLaw::Consistency);

        let broken = Proposition::new(
            "P",
            p.yes().clone(),
            p.no().with_entry(StateId(1), StateRef::Proper(StateId(2))),
        )
        .unwrap();
        let r = validate_proposition(&broken, &s).unwrap();
        assert!(r.has_law(ModelLaw::IdempotenceNo));

        let other = StateSpace::new(["x"]).unwrap();
        assert_eq!(
            validate_proposition(&p, &other).unwrap_err(),
            GqtError::SpaceMismatch
        );
    }
}
