//! Finite GQT models.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{GqtError, Result};
use crate::observable::{validate_observable, Observable};
use crate::proposition::{
    negate, validate_proposition, DerivedProposition, PropMap, Proposition, NEGATION_PREFIX, ONE,
    ZERO,
};
use crate::state::{same_space, StateRef, StateSpace};
use crate::validation::{ModelLaw, Report, Violation};

/// Subsystem tagging of observables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Partition {
    pub subsystems: Vec<String>,
    /// Local observable name -> subsystem label.
    pub local: BTreeMap<String, String>,
    pub global: BTreeSet<String>,
}

impl Partition {
    pub fn subsystem_of(&self, observable: &str) -> Option<&str> {
        self.local.get(observable).map(String::as_str)
    }

    pub fn is_global(&self, observable: &str) -> bool {
        self.global.contains(observable)
    }
}

/// An observable described by proposition names, resolved against a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservableSpec {
    pub name: String,
    pub spectrum: Vec<String>,
    /// Value -> proposition name (`ONE`, `ZERO`, stored, or `¬stored`).
    pub family: Vec<(String, String)>,
}

impl ObservableSpec {
    pub fn of(a: &Observable) -> Self {
        ObservableSpec {
            name: a.name().to_string(),
            spectrum: a.spectrum().to_vec(),
            family: a
                .branches()
                .map(|(v, p)| (v.to_string(), p.name().to_string()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Model {
    space: Arc<StateSpace>,
    propositions: BTreeMap<String, Proposition>,
    observables: BTreeMap<String, Observable>,
    partition: Option<Partition>,
    one: Proposition,
    zero: Proposition,
}

fn check_proposition_name(name: &str) -> Result<()> {
    if name == ONE || name == ZERO || name.starts_with(NEGATION_PREFIX) {
        return Err(GqtError::ReservedName(name.to_string()));
    }
    if name.is_empty() {
        return Err(GqtError::UnknownProposition(String::new()));
    }
    Ok(())
}

impl Model {
    /// Assembles a model. Structural problems are errors; GQT law violations
    /// are left for [`validate_model`].
    ///
    /// Every observable family member must be a proposition the model can
    /// resolve by name (a stored proposition, `ONE`, `ZERO`, or `¬X` for a
    /// stored `X`) and carry exactly the maps of that proposition.
    pub fn new(
        space: Arc<StateSpace>,
        propositions: Vec<Proposition>,
        observables: Vec<Observable>,
        partition: Option<Partition>,
    ) -> Result<Self> {
        let mut props = BTreeMap::new();
        for p in propositions {
            check_proposition_name(p.name())?;
            if !same_space(p.space(), &space) {
                return Err(GqtError::SpaceMismatch);
            }
            let name = p.name().to_string();
            if props.insert(name.clone(), p).is_some() {
                return Err(GqtError::DuplicateName {
                    kind: "proposition",
                    name,
                });
            }
        }
        let mut model = Model {
            one: Proposition::one(Arc::clone(&space)),
            zero: Proposition::zero(Arc::clone(&space)),
            space,
            propositions: props,
            observables: BTreeMap::new(),
            partition,
        };
        for a in observables {
            if !same_space(a.space(), &model.space) {
                return Err(GqtError::SpaceMismatch);
            }
            for member in a.family() {
                let resolved = model.proposition(member.name())?;
                if !resolved.same_maps(member) {
                    return Err(GqtError::FamilyMismatch {
                        observable: a.name().to_string(),
                        proposition: member.name().to_string(),
                    });
                }
            }
            let name = a.name().to_string();
            if model.observables.insert(name.clone(), a).is_some() {
                return Err(GqtError::DuplicateName {
                    kind: "observable",
                    name,
                });
            }
        }
        Ok(model)
    }

    pub fn space(&self) -> &Arc<StateSpace> {
        &self.space
    }

    pub fn one(&self) -> &Proposition {
        &self.one
    }

    pub fn zero(&self) -> &Proposition {
        &self.zero
    }

    /// Stored propositions, ordered by name.
    pub fn propositions(&self) -> impl Iterator<Item = &Proposition> {
        self.propositions.values()
    }

    /// Observables, ordered by name.
    pub fn observables(&self) -> impl Iterator<Item = &Observable> {
        self.observables.values()
    }

    pub fn partition(&self) -> Option<&Partition> {
        self.partition.as_ref()
    }

    /// Resolves `ONE`, `ZERO`, a stored name, or `¬name`.
    pub fn proposition(&self, name: &str) -> Result<Proposition> {
        match name {
            ONE => return Ok(self.one.clone()),
            ZERO => return Ok(self.zero.clone()),
            _ => {}
        }
        if let Some(p) = self.propositions.get(name) {
            return Ok(p.clone());
        }
        if let Some(inner) = name.strip_prefix(NEGATION_PREFIX) {
            if let Some(p) = self.propositions.get(inner) {
                return Ok(negate(p));
            }
        }
        Err(GqtError::UnknownProposition(name.to_string()))
    }

    pub fn stored_proposition(&self, name: &str) -> Option<&Proposition> {
        self.propositions.get(name)
    }

    pub fn observable(&self, name: &str) -> Result<&Observable> {
        self.observables
            .get(name)
            .ok_or_else(|| GqtError::UnknownObservable(name.to_string()))
    }

    pub fn state(&self, name: &str) -> Result<StateRef> {
        self.space.lookup(name).map(StateRef::Proper)
    }

    /// Rebuilds the model with different observables and partition.
    pub fn with_observables(
        &self,
        observables: Vec<Observable>,
        partition: Option<Partition>,
    ) -> Result<Model> {
        Model::new(
            Arc::clone(&self.space),
            self.propositions.values().cloned().collect(),
            observables,
            partition,
        )
    }

    /// Rebuilds the model with one stored proposition replaced. Observable
    /// members referring to it (directly or negated) are updated too.
    pub fn with_proposition(&self, p: Proposition) -> Result<Model> {
        let name = p.name().to_string();
        if !self.propositions.contains_key(&name) {
            return Err(GqtError::UnknownProposition(name));
        }
        let mut props = self.propositions.clone();
        props.insert(name.clone(), p.clone());
        let negated = negate(&p);
        let observables = self
            .observables
            .values()
            .map(|a| {
                let family = a
                    .branches()
                    .map(|(v, m)| {
                        let member = if m.name() == name {
                            p.clone()
                        } else if m.name() == negated.name() {
                            negated.clone()
                        } else {
                            m.clone()
                        };
                        (v.to_string(), member)
                    })
                    .collect();
                Observable::new(a.name(), a.spectrum().to_vec(), family)
            })
            .collect::<Result<Vec<_>>>()?;
        Model::new(
            Arc::clone(&self.space),
            props.into_values().collect(),
            observables,
            self.partition.clone(),
        )
    }

    /// Resolves name-based observable descriptions against this model and
    /// rebuilds it with them.
    pub fn attach_observables(
        &self,
        specs: &[ObservableSpec],
        partition: Option<Partition>,
    ) -> Result<Model> {
        let observables = specs
            .iter()
            .map(|spec| {
                let family = spec
                    .family
                    .iter()
                    .map(|(value, prop)| Ok((value.clone(), self.proposition(prop)?)))
                    .collect::<Result<Vec<_>>>()?;
                Observable::new(spec.name.clone(), spec.spectrum.clone(), family)
            })
            .collect::<Result<Vec<_>>>()?;
        self.with_observables(observables, partition)
    }

    /// The same model over a state space with new names (same order).
    pub fn renamed_states(&self, names: Vec<String>) -> Result<Model> {
        if names.len() != self.space.len() {
            return Err(GqtError::NotTotal {
                expected: self.space.len(),
                got: names.len(),
            });
        }
        let space = StateSpace::new(names)?;
        let props = self
            .propositions
            .values()
            .map(|p| {
                Proposition::new(
                    p.name(),
                    PropMap::new(Arc::clone(&space), p.yes().targets().to_vec())?,
                    PropMap::new(Arc::clone(&space), p.no().targets().to_vec())?,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let base = Model::new(space, props, Vec::new(), None)?;
        let specs: Vec<ObservableSpec> =
            self.observables.values().map(ObservableSpec::of).collect();
        base.attach_observables(&specs, self.partition.clone())
    }

    /// All propositions the model can name: builtins, stored ones, and the
    /// negations of stored ones.
    pub fn resolvable_propositions(&self) -> Vec<Proposition> {
        let mut out = vec![self.one.clone(), self.zero.clone()];
        out.extend(self.propositions.values().cloned());
        out.extend(self.propositions.values().map(negate));
        out
    }
}

/// Binds a derived proposition to the unique resolvable model proposition
/// whose map on the known side matches.
pub fn realize(model: &Model, d: &DerivedProposition) -> Result<Option<Proposition>> {
    if !same_space(d.known_map.space(), model.space()) {
        return Err(GqtError::SpaceMismatch);
    }
    let mut matches: Vec<Proposition> = model
        .resolvable_propositions()
        .into_iter()
        .filter(|p| *p.map(d.known_side) == d.known_map)
        .collect();
    match matches.len() {
        0 => Ok(None),
        1 => Ok(matches.pop()),
        _ => Err(GqtError::AmbiguousRealization(
            matches.iter().map(|p| p.name().to_string()).collect(),
        )),
    }
}

fn builtin_violation(name: &str, detail: &str) -> Violation {
    Violation {
        law: ModelLaw::Builtin,
        subject: name.to_string(),
        values: Vec::new(),
        state: None,
        detail: detail.to_string(),
    }
}

fn partition_violation(subject: &str, detail: String) -> Violation {
    Violation {
        law: ModelLaw::Partition,
        subject: subject.to_string(),
        values: Vec::new(),
        state: None,
        detail,
    }
}

/// Runs every proposition, observable, builtin and partition check.
pub fn validate_model(model: &Model) -> Report {
    let space = model.space();
    let mut report = Report::default();

    if *model.one.yes() != PropMap::identity(Arc::clone(space))
        || !model.one.no().is_constant_zero()
    {
        report.push(builtin_violation(
            ONE,
            "ONE must be (identity, constant-zero)",
        ));
    }
    if *model.zero.yes() != *model.one.no() || *model.zero.no() != *model.one.yes() {
        report.push(builtin_violation(ZERO, "ZERO must be the negation of ONE"));
    }

    for p in model.propositions() {
        // Spaces were checked at construction.
        if let Ok(r) = validate_proposition(p, space) {
            report.extend(r);
        }
    }
    for a in model.observables() {
        if let Ok(r) = validate_observable(a, space) {
            report.extend(r);
        }
    }
    if let Some(partition) = model.partition() {
        let subsystems: BTreeSet<&str> = partition.subsystems.iter().map(String::as_str).collect();
        if subsystems.len() != partition.subsystems.len() {
            report.push(partition_violation(
                "partition",
                "duplicate subsystem label".to_string(),
            ));
        }
        for (name, sub) in &partition.local {
            if model.observable(name).is_err() {
                report.push(partition_violation(
                    name,
                    "local tag names an unknown observable".to_string(),
                ));
            }
            if !subsystems.contains(sub.as_str()) {
                report.push(partition_violation(
                    name,
                    format!("unknown subsystem {sub:?}"),
                ));
            }
            if partition.global.contains(name) {
                report.push(partition_violation(
                    name,
                    "tagged both local and global".to_string(),
                ));
            }
        }
        for name in &partition.global {
            if model.observable(name).is_err() {
                report.push(partition_violation(
                    name,
                    "global tag names an unknown observable".to_string(),
                ));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proposition::Outcome;
    use crate::state::StateId;

    fn model() -> Model {
        let s = StateSpace::new(["a", "b", "c"]).unwrap();
        let id = |i| StateRef::Proper(StateId(i));
        let p = Proposition::new(
            "P",
            PropMap::new(Arc::clone(&s), vec![id(0), StateRef::Zero, id(0)]).unwrap(),
            PropMap::new(Arc::clone(&s), vec![StateRef::Zero, id(1), id(1)]).unwrap(),
        )
        .unwrap();
        let a = Observable::new(
            "A",
            vec!["y", "n"],
            vec![("y".into(), p.clone()), ("n".into(), negate(&p))],
        )
        .unwrap();
        Model::new(s, vec![p], vec![a], None).unwrap()
    }

    #[test]
    fn resolves_builtins_and_negations() {
        let m = model();
        assert_eq!(m.proposition("ONE").unwrap(), *m.one());
        assert_eq!(m.proposition("¬P").unwrap().name(), "¬P");
        assert_eq!(
            m.proposition("¬P").unwrap().yes(),
            m.proposition("P").unwrap().no()
        );
        assert!(matches!(
            m.proposition("Q"),
            Err(GqtError::UnknownProposition(_))
        ));
        assert!(validate_model(&m).is_empty());
    }

    #[test]
    fn reserved_and_duplicate_names() {
        let m = model();
        let p = m.proposition("P").unwrap();
        for bad in ["ONE", "ZERO", "¬X"] {
            let err =
                Model::new(Arc::clone(m.space()), vec![p.renamed(bad)], vec![], None).unwrap_err();
            assert_eq!(err, GqtError::ReservedName(bad.to_string()));
        }
        let err = Model::new(
            Arc::clone(m.space()),
            vec![p.clone(), p.clone()],
            vec![],
            None,
        )
        .unwrap_err();
        assert!(matches!(err, GqtError::DuplicateName { .. }));
    }

    #[test]
    fn family_must_match_model() {
        let m = model();
        let p = m.proposition("P").unwrap();
        let tampered = Proposition::new(
            "P",
            p.yes().with_entry(StateId(2), StateRef::Zero),
            p.no().clone(),
        )
        .unwrap();
        let a = Observable::from_proposition("B", &tampered);
        let err = m.with_observables(vec![a], None).unwrap_err();
        assert!(matches!(err, GqtError::FamilyMismatch { .. }));
    }

    #[test]
    fn with_proposition_updates_families() {
        let m = model();
        let p = m.proposition("P").unwrap();
        let changed = Proposition::new(
            "P",
            p.yes().with_entry(StateId(2), StateRef::Zero),
            p.no().clone(),
        )
        .unwrap();
        let m2 = m.with_proposition(changed.clone()).unwrap();
        let a = m2.observable("A").unwrap();
        assert_eq!(a.family()[0], changed);
        assert_eq!(a.family()[1], negate(&changed));
        assert!(validate_model(&m2).is_empty());
    }

    #[test]
    fn realize_lookup() {
        let m = model();
        let p = m.proposition("P").unwrap();
        let d = DerivedProposition {
            known_side: Outcome::Yes,
            known_map: p.yes().clone(),
            provenance: "test".into(),
        };
        assert_eq!(realize(&m, &d).unwrap().unwrap().name(), "P");
        let d = DerivedProposition {
            known_side: Outcome::Yes,
            known_map: PropMap::zero(Arc::clone(m.space())),
            provenance: "test".into(),
        };
        assert_eq!(realize(&m, &d).unwrap().unwrap().name(), "ZERO");
        let d = DerivedProposition {
            known_side: Outcome::Yes,
            known_map: p.yes().with_entry(StateId(1), StateRef::Proper(StateId(1))),
            provenance: "test".into(),
        };
        assert_eq!(realize(&m, &d).unwrap(), None);

        // A stored copy of P under another name makes the match ambiguous.
        let m2 = Model::new(
            Arc::clone(m.space()),
            vec![p.clone(), p.renamed("Q")],
            vec![],
            None,
        )
        .unwrap();
        let d = DerivedProposition {
            known_side: Outcome::Yes,
            known_map: p.yes().clone(),
            provenance: "test".into(),
        };
        assert_eq!(
            realize(&m2, &d).unwrap_err(),
            GqtError::AmbiguousRealization(vec!["P".into(), "Q".into()])
        );
    }

    #[test]
    fn partition_references_are_checked() {
        let m = model();
        let mut partition = Partition {
            subsystems: vec!["L".into()],
            ..Default::default()
        };
        partition.local.insert("A".into(), "L".into());
        partition.local.insert("Ghost".into(), "R".into());
        partition.global.insert("A".into());
        let m2 = m
            .with_observables(m.observables().cloned().collect(), Some(partition))
            .unwrap();
        let r = validate_model(&m2);
        assert!(r.iter().all(|v| v.law == ModelLaw::Partition));
        // Ghost unknown, Ghost's subsystem unknown, A local and global.
        assert_eq!(r.len(), 3);
    }
}
