//! Observables as spectrum-indexed proposition families.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{GqtError, Result};
use crate::proposition::{compose, Outcome, Proposition};
use crate::state::{same_space, StateId, StateRef, StateSpace};
use crate::validation::{ModelLaw, Report, Violation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Observable {
    name: String,
    spectrum: Vec<String>,
    /// `family[i]` is the proposition "the value is `spectrum[i]`".
    family: Vec<Proposition>,
}

impl Observable {
    /// Builds an observable. `family` may list values in any order but must
    /// cover the spectrum exactly once.
    pub fn new<S: Into<String>>(
        name: impl Into<String>,
        spectrum: Vec<S>,
        family: Vec<(String, Proposition)>,
    ) -> Result<Self> {
        let name = name.into();
        let spectrum: Vec<String> = spectrum.into_iter().map(Into::into).collect();
        if spectrum.is_empty() {
            return Err(GqtError::EmptySpectrum { observable: name });
        }
        let mut seen = HashSet::new();
        for v in &spectrum {
            if !seen.insert(v.as_str()) {
                return Err(GqtError::DuplicateValue {
                    observable: name,
                    value: v.clone(),
                });
            }
        }
        let mut slots: Vec<Option<Proposition>> = vec![None; spectrum.len()];
        for (value, prop) in family {
            match spectrum.iter().position(|v| *v == value) {
                Some(i) if slots[i].is_none() => slots[i] = Some(prop),
                Some(_) => {
                    return Err(GqtError::DuplicateValue {
                        observable: name,
                        value,
                    })
                }
                None => {
                    return Err(GqtError::ExtraFamilyValue {
                        observable: name,
                        value,
                    })
                }
            }
        }
        let mut members = Vec::with_capacity(slots.len());
        for (i, slot) in slots.into_iter().enumerate() {
            match slot {
                Some(p) => members.push(p),
                None => {
                    return Err(GqtError::MissingFamilyValue {
                        observable: name,
                        value: spectrum[i].clone(),
                    })
                }
            }
        }
        let space = Arc::clone(members[0].space());
        if members.iter().any(|p| !same_space(p.space(), &space)) {
            return Err(GqtError::SpaceMismatch);
        }
        Ok(Observable {
            name,
            spectrum,
            family: members,
        })
    }

    /// The two-valued observable `{yes ↦ P, no ↦ ¬P}`.
    pub fn from_proposition(name: impl Into<String>, p: &Proposition) -> Self {
        Observable {
            name: name.into(),
            spectrum: vec!["yes".to_string(), "no".to_string()],
            family: vec![p.clone(), crate::proposition::negate(p)],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn spectrum(&self) -> &[String] {
        &self.spectrum
    }

    pub fn family(&self) -> &[Proposition] {
        &self.family
    }

    pub fn space(&self) -> &Arc<StateSpace> {
        self.family[0].space()
    }

    pub fn value_index(&self, value: &str) -> Result<usize> {
        self.spectrum
            .iter()
            .position(|v| v == value)
            .ok_or_else(|| GqtError::UnknownValue {
                observable: self.name.clone(),
                value: value.to_string(),
            })
    }

    pub fn branch(&self, value: &str) -> Result<&Proposition> {
        Ok(&self.family[self.value_index(value)?])
    }

    /// Members paired with their spectrum values.
    pub fn branches(&self) -> impl Iterator<Item = (&str, &Proposition)> {
        self.spectrum.iter().map(String::as_str).zip(&self.family)
    }
}

/// Checks mutual exclusion of the yes-maps and completeness of the family.
pub fn validate_observable(a: &Observable, space: &Arc<StateSpace>) -> Result<Report> {
    if !same_space(a.space(), space) {
        return Err(GqtError::SpaceMismatch);
    }
    let mut report = Report::default();
    for i in 0..a.family.len() {
        for j in (i + 1)..a.family.len() {
            let (p, q) = (a.family[i].yes(), a.family[j].yes());
            for (first, second, order) in [(p, q, (i, j)), (q, p, (j, i))] {
                let composite = compose(first, second)?;
                if let Some(z) = space.ids().find(|&z| !composite.at(z).is_zero()) {
                    report.push(Violation {
                        law: ModelLaw::Exclusion,
                        subject: a.name.clone(),
                        values: vec![a.spectrum[i].clone(), a.spectrum[j].clone()],
                        state: Some(space.name(z).to_string()),
                        detail: format!(
                            "{}∘{} sends {} to {}",
                            a.spectrum[order.0],
                            a.spectrum[order.1],
                            space.name(z),
                            space.display(composite.at(z))
                        ),
                    });
                }
            }
        }
    }
    for z in space.ids() {
        if a.family.iter().all(|p| p.yes().at(z).is_zero()) {
            report.push(Violation {
                law: ModelLaw::Completeness,
                subject: a.name.clone(),
                values: Vec::new(),
                state: Some(space.name(z).to_string()),
                detail: "no spectrum value is possible".to_string(),
            });
        }
    }
    Ok(report)
}

/// `(state, value index)` pairs where the branch's yes-map fixes the state,
/// ordered by state name and then spectrum order.
pub fn eigenstates_of_observable(a: &Observable) -> Vec<(StateId, usize)> {
    let space = a.space();
    let mut out: Vec<(StateId, usize)> = space
        .ids()
        .flat_map(|z| {
            a.family
                .iter()
                .enumerate()
                .filter(move |(_, p)| p.map(Outcome::Yes).at(z) == StateRef::Proper(z))
                .map(move |(i, _)| (z, i))
        })
        .collect();
    out.sort_by(|x, y| {
        space
            .sort_key(x.0)
            .cmp(space.sort_key(y.0))
            .then(x.1.cmp(&y.1))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proposition::{negate, PropMap};

    fn space() -> Arc<StateSpace> {
        StateSpace::new(["a", "b", "c"]).unwrap()
    }

    fn p(space: &Arc<StateSpace>) -> Proposition {
        let id = |n| StateRef::Proper(space.lookup(n).unwrap());
        Proposition::new(
            "P",
            PropMap::new(Arc::clone(space), vec![id("a"), StateRef::Zero, id("a")]).unwrap(),
            PropMap::new(Arc::clone(space), vec![StateRef::Zero, id("b"), id("b")]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn proposition_observable_is_valid() {
        let s = space();
        let a = Observable::from_proposition("A", &p(&s));
        assert!(validate_observable(&a, &s).unwrap().is_empty());
        let eig = eigenstates_of_observable(&a);
        assert_eq!(eig, vec![(StateId(0), 0), (StateId(1), 1)]);
    }

    #[test]
    fn structural_errors() {
        let s = space();
        let p = p(&s);
        let err =
            Observable::new("A", vec!["yes", "no"], vec![("yes".into(), p.clone())]).unwrap_err();
        assert!(matches!(err, GqtError::MissingFamilyValue { ref value, .. } if value == "no"));
        let err = Observable::new(
            "A",
            vec!["yes"],
            vec![("yes".into(), p.clone()), ("maybe".into(), p.clone())],
        )
        .unwrap_err();
        assert!(matches!(err, GqtError::ExtraFamilyValue { .. }));
        let err = Observable::new::<String>("A", vec![], vec![]).unwrap_err();
        assert!(matches!(err, GqtError::EmptySpectrum { .. }));
        let err = Observable::new("A", vec!["x", "x"], vec![]).unwrap_err();
        assert!(matches!(err, GqtError::DuplicateValue { .. }));
    }

    #[test]
    fn exclusion_and_completeness_violations() {
        let s = space();
        let p = p(&s);
        // P twice: P.yes∘P.yes = P.yes is not zero.
        let a = Observable::new(
            "A",
            vec!["u", "v"],
            vec![("u".into(), p.clone()), ("v".into(), p.clone())],
        )
        .unwrap();
        let r = validate_observable(&a, &s).unwrap();
        assert!(r.has_law(ModelLaw::Exclusion));
        // b is only reachable through ¬P: dropping it leaves b without a branch.
        assert!(r
            .iter()
            .any(|v| v.law == ModelLaw::Completeness && v.state.as_deref() == Some("b")));

        let single = Observable::new("S", vec!["u"], vec![("u".into(), negate(&p))]).unwrap();
        let r = validate_observable(&single, &s).unwrap();
        let missing: Vec<_> = r.iter().filter_map(|v| v.state.clone()).collect();
        assert_eq!(missing, vec!["a".to_string()]);
    }

    #[test]
    fn single_one_observable_fixes_everything() {
        let s = space();
        let one = Proposition::one(Arc::clone(&s));
        let a = Observable::new("T", vec!["t"], vec![("t".into(), one)]).unwrap();
        assert!(validate_observable(&a, &s).unwrap().is_empty());
        assert_eq!(eigenstates_of_observable(&a).len(), 3);
    }
}
