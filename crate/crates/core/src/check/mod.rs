//! Random valid models and a checker for the calculus' identities and
//! theorems.
//!
//! ```
//! use gqt::check::{check_laws, generate_model, GeneratorParams};
//! use gqt::model::validate_model;
//!
//! let model = generate_model(&GeneratorParams::new(3, 2, 1, 42)).unwrap();
//! assert!(validate_model(&model).is_empty());
//! assert!(check_laws(&model).is_empty());
//! ```

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::model::{Model, ObservableSpec};
use crate::proposition::{PropMap, Proposition};
use crate::state::{StateId, StateRef, StateSpace};

mod generator;
mod laws;

pub use generator::{generate_model, GeneratorParams, ParamError};
pub use laws::{check_laws, check_notes, Law, LawViolation, Note, COMPLEMENTARY_WITHOUT_GAP};

/// The sub-model on the states reachable from the witness states under
/// every stored map. Laws evaluated at a witness only look at reachable
/// states, so the violation replays on the result. Laws without a witness
/// state keep the whole model.
pub fn minimize(model: &Model, violation: &LawViolation) -> Result<Model> {
    if violation.states.is_empty() {
        return Ok(model.clone());
    }
    let space = model.space();
    let mut keep = vec![false; space.len()];
    let mut stack = violation
        .states
        .iter()
        .map(|s| space.lookup(s))
        .collect::<Result<Vec<_>>>()?;
    while let Some(z) = stack.pop() {
        if std::mem::replace(&mut keep[z.index()], true) {
            continue;
        }
        for p in model.propositions() {
            for t in [p.yes().at(z), p.no().at(z)] {
                if let StateRef::Proper(t) = t {
                    if !keep[t.index()] {
                        stack.push(t);
                    }
                }
            }
        }
    }
    let kept: Vec<StateId> = space.ids().filter(|z| keep[z.index()]).collect();
    if kept.len() == space.len() {
        return Ok(model.clone());
    }
    let sub = StateSpace::new(kept.iter().map(|&z| space.name(z).to_string()))?;
    let reindex = |t: StateRef| match t {
        StateRef::Proper(t) => {
            StateRef::Proper(sub.lookup(space.name(t)).expect("closed under maps"))
        }
        StateRef::Zero => StateRef::Zero,
    };
    let props = model
        .propositions()
        .map(|p| {
            let yes = kept.iter().map(|&z| reindex(p.yes().at(z))).collect();
            let no = kept.iter().map(|&z| reindex(p.no().at(z))).collect();
            Proposition::new(
                p.name(),
                PropMap::new(Arc::clone(&sub), yes)?,
                PropMap::new(Arc::clone(&sub), no)?,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let specs: Vec<ObservableSpec> = model.observables().map(ObservableSpec::of).collect();
    Model::new(sub, props, Vec::new(), None)?.attach_observables(&specs, model.partition().cloned())
}

/// The first violation of a law seen during a fuzz run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub params: GeneratorParams,
    pub violation: LawViolation,
    /// Number of states in the minimized model.
    pub minimized_states: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct FuzzSummary {
    pub models_checked: usize,
    pub violations: usize,
    pub violations_by_law: BTreeMap<String, usize>,
    pub first_counterexample: BTreeMap<String, Counterexample>,
    pub notes: usize,
    pub notes_by_kind: BTreeMap<String, usize>,
}

impl FuzzSummary {
    pub fn violations_of(&self, law: Law) -> usize {
        self.violations_by_law.get(law.id()).copied().unwrap_or(0)
    }
}

struct ModelResult {
    params: GeneratorParams,
    model: Model,
    violations: Vec<LawViolation>,
    notes: Vec<Note>,
}

/// Sizes for the `i`-th model: `params` sizes are maxima, drawn per model
/// from its own seed `params.seed + i`.
pub fn fuzz_params(params: &GeneratorParams, i: u64) -> GeneratorParams {
    let seed = params.seed.wrapping_add(i);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    GeneratorParams {
        n_states: rng.random_range(1..=params.n_states.max(1)),
        n_props: rng.random_range(0..=params.n_props),
        n_obs: rng.random_range(0..=params.n_obs),
        max_spectrum: params.max_spectrum,
        seed,
    }
}

/// Generates and checks `n_models` models. Models are checked in parallel
/// and merged in seed order, so the summary equals a sequential run.
pub fn fuzz(
    params: &GeneratorParams,
    n_models: u64,
) -> std::result::Result<FuzzSummary, ParamError> {
    params.validate()?;
    let results: Vec<ModelResult> = (0..n_models)
        .into_par_iter()
        .map(|i| {
            let p = fuzz_params(params, i);
            let model = generate_model(&p).expect("sizes stay within the validated maxima");
            ModelResult {
                params: p,
                violations: check_laws(&model),
                notes: check_notes(&model),
                model,
            }
        })
        .collect();

    let mut summary = FuzzSummary::default();
    for r in results {
        summary.models_checked += 1;
        summary.violations += r.violations.len();
        summary.notes += r.notes.len();
        for note in &r.notes {
            *summary
                .notes_by_kind
                .entry(note.kind.to_string())
                .or_default() += 1;
        }
        for v in r.violations {
            let id = v.law.id().to_string();
            *summary.violations_by_law.entry(id.clone()).or_default() += 1;
            if let Entry::Vacant(slot) = summary.first_counterexample.entry(id) {
                let minimized_states = minimize(&r.model, &v)
                    .map(|m| m.space().len())
                    .unwrap_or(r.model.space().len());
                slot.insert(Counterexample {
                    params: r.params,
                    violation: v,
                    minimized_states,
                });
            }
        }
    }
    Ok(summary)
}

/// Law ids with at least one violation, in catalogue order.
pub fn violated_laws(violations: &[LawViolation]) -> BTreeSet<Law> {
    violations.iter().map(|v| v.law).collect()
}
