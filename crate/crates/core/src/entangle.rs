//! Entanglement detection over a partitioned model.
//!
//! A state is entangled relative to a global observable `G` and local
//! observables `L1..Ln` when
//!
//! 1. locals tagged to different subsystems are pairwise compatible,
//! 2. `G` is complementary to every listed local, and
//! 3. the state is an eigenstate of `G` but of none of the locals.

use std::fmt;

use serde::Serialize;

use crate::compat::{classify_pair, CommutationWitness, PairClass};
use crate::error::{GqtError, Result};
use crate::model::Model;
use crate::observable::{eigenstates_of_observable, Observable};
use crate::state::StateId;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PreconditionViolation {
    /// Two locals from different subsystems fail to commute.
    LocalsIncompatible {
        left: String,
        right: String,
        witness: Option<CommutationWitness>,
    },
    /// The global observable is compatible with a local one.
    GlobalCompatible { global: String, local: String },
}

impl fmt::Display for PreconditionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PreconditionViolation::LocalsIncompatible {
                left,
                right,
                witness,
            } => {
                write!(f, "locals {left} and {right} are not compatible")?;
                if let Some(w) = witness {
                    write!(f, " ({w})")?;
                }
                Ok(())
            }
            PreconditionViolation::GlobalCompatible { global, local } => {
                write!(f, "global {global} is compatible with local {local}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct EntanglementReport {
    pub violations: Vec<PreconditionViolation>,
}

impl EntanglementReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for EntanglementReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

fn resolve<'m>(
    model: &'m Model,
    global: &str,
    locals: &[&str],
) -> Result<(&'m Observable, Vec<(&'m Observable, &'m str)>)> {
    let partition = model.partition().ok_or(GqtError::MissingPartition)?;
    let g = model.observable(global)?;
    if !partition.is_global(global) {
        return Err(GqtError::TagMismatch {
            name: global.to_string(),
            expected: "global",
        });
    }
    let mut out = Vec::with_capacity(locals.len());
    for &name in locals {
        let obs = model.observable(name)?;
        let sub = partition
            .subsystem_of(name)
            .ok_or_else(|| GqtError::TagMismatch {
                name: name.to_string(),
                expected: "local",
            })?;
        out.push((obs, sub));
    }
    Ok((g, out))
}

pub fn check_entanglement_preconditions(
    model: &Model,
    global: &str,
    locals: &[&str],
) -> Result<EntanglementReport> {
    let (g, locals) = resolve(model, global, locals)?;
    let mut report = EntanglementReport::default();
    for i in 0..locals.len() {
        for j in (i + 1)..locals.len() {
            let ((a, sa), (b, sb)) = (locals[i], locals[j]);
            // Locals of one subsystem may be mutually complementary.
            if sa == sb {
                continue;
            }
            let (class, evidence) = classify_pair(a, b)?;
            if !class.is_compatible() {
                report
                    .violations
                    .push(PreconditionViolation::LocalsIncompatible {
                        left: a.name().to_string(),
                        right: b.name().to_string(),
                        witness: evidence.witness,
                    });
            }
        }
    }
    for (l, _) in &locals {
        let (class, _) = classify_pair(g, l)?;
        if class == PairClass::Compatible {
            report
                .violations
                .push(PreconditionViolation::GlobalCompatible {
                    global: g.name().to_string(),
                    local: l.name().to_string(),
                });
        }
    }
    Ok(report)
}

/// Entangled states together with the eigenstate tables they were read from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entanglement {
    pub states: Vec<StateId>,
    /// `(state, value index)` eigenstates of the global observable.
    pub global_eigenstates: Vec<(StateId, usize)>,
    /// Per listed local, in the order given.
    pub local_eigenstates: Vec<(String, Vec<(StateId, usize)>)>,
}

pub fn entangled_states(model: &Model, global: &str, locals: &[&str]) -> Result<Entanglement> {
    let report = check_entanglement_preconditions(model, global, locals)?;
    if !report.is_empty() {
        return Err(GqtError::EntanglementPrecondition(Box::new(report)));
    }
    let (g, resolved) = resolve(model, global, locals)?;
    let global_eigenstates = eigenstates_of_observable(g);
    let local_eigenstates: Vec<(String, Vec<(StateId, usize)>)> = resolved
        .iter()
        .map(|(l, _)| (l.name().to_string(), eigenstates_of_observable(l)))
        .collect();
    let mut states: Vec<StateId> = Vec::new();
    for &(z, _) in &global_eigenstates {
        if states.last() == Some(&z) {
            continue;
        }
        let local_eigen = local_eigenstates
            .iter()
            .any(|(_, eig)| eig.iter().any(|&(w, _)| w == z));
        if !local_eigen {
            states.push(z);
        }
    }
    Ok(Entanglement {
        states,
        global_eigenstates,
        local_eigenstates,
    })
}
