//! Seeded construction of valid random models.
//!
//! Every proposition is built from an eigen-partition of the states into
//! yes-eigenstates `Y`, no-eigenstates `N` and contingent states `C` with
//! `Y ∪ N ≠ ∅`. The yes-map fixes `Y`, kills `N` and sends each contingent
//! state into `Y` (or to zero when `Y` is empty); the no-map is symmetric.
//! Such pairs satisfy idempotence, annihilation and consistency by
//! construction, so no rejection sampling is needed.
//!
//! States are also grouped into blocks. Some propositions and observables
//! keep every state inside its block; those commute with the classical
//! block observables, which gives the compatibility theorems something to
//! bite on.

use std::sync::Arc;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::model::Model;
use crate::observable::Observable;
use crate::proposition::{negate, PropMap, Proposition};
use crate::state::{StateId, StateRef, StateSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GeneratorParams {
    pub n_states: usize,
    pub n_props: usize,
    pub n_obs: usize,
    pub max_spectrum: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{field} must be in {min}..={max}, got {value}")]
pub struct ParamError {
    pub field: &'static str,
    pub min: usize,
    pub max: usize,
    pub value: usize,
}

impl GeneratorParams {
    pub const STATES: (usize, usize) = (1, 64);
    pub const PROPS: (usize, usize) = (0, 16);
    pub const OBSERVABLES: (usize, usize) = (0, 8);
    pub const SPECTRUM: (usize, usize) = (2, 8);

    pub fn new(n_states: usize, n_props: usize, n_obs: usize, seed: u64) -> Self {
        GeneratorParams {
            n_states,
            n_props,
            n_obs,
            max_spectrum: 4,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        for (field, (min, max), value) in [
            ("n_states", Self::STATES, self.n_states),
            ("n_props", Self::PROPS, self.n_props),
            ("n_obs", Self::OBSERVABLES, self.n_obs),
            ("max_spectrum", Self::SPECTRUM, self.max_spectrum),
        ] {
            if value < min || value > max {
                return Err(ParamError {
                    field,
                    min,
                    max,
                    value,
                });
            }
        }
        Ok(())
    }
}

struct Builder {
    rng: ChaCha8Rng,
    space: Arc<StateSpace>,
    blocks: Vec<Vec<usize>>,
    props: Vec<Proposition>,
}

fn target(i: Option<&usize>) -> StateRef {
    match i {
        Some(&i) => StateRef::Proper(StateId(i as u32)),
        None => StateRef::Zero,
    }
}

impl Builder {
    fn next_prop_name(&self) -> String {
        format!("P{}", self.props.len())
    }

    /// Splits `states` into (Y, N, C) with Y ∪ N nonempty.
    fn eigen_partition(&mut self, states: &[usize]) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let (mut y, mut n, mut c) = (Vec::new(), Vec::new(), Vec::new());
        for &s in states {
            match self.rng.random_range(0..3) {
                0 => y.push(s),
                1 => n.push(s),
                _ => c.push(s),
            }
        }
        if y.is_empty() && n.is_empty() {
            let k = self.rng.random_range(0..c.len());
            let s = c.remove(k);
            if self.rng.random_bool(0.5) {
                y.push(s);
            } else {
                n.push(s);
            }
        }
        (y, n, c)
    }

    fn proposition(&mut self, block_preserving: bool) -> Proposition {
        let n = self.space.len();
        let mut yes = vec![StateRef::Zero; n];
        let mut no = vec![StateRef::Zero; n];
        let regions: Vec<Vec<usize>> = if block_preserving {
            self.blocks.clone()
        } else {
            vec![(0..n).collect()]
        };
        for region in regions {
            let (y, nn, c) = self.eigen_partition(&region);
            for &s in &y {
                yes[s] = target(Some(&s));
            }
            for &s in &nn {
                no[s] = target(Some(&s));
            }
            for &s in &c {
                yes[s] = target(y.choose(&mut self.rng));
                no[s] = target(nn.choose(&mut self.rng));
            }
        }
        let name = self.next_prop_name();
        Proposition::new(
            name,
            PropMap::new(Arc::clone(&self.space), yes).expect("total"),
            PropMap::new(Arc::clone(&self.space), no).expect("total"),
        )
        .expect("same space")
    }

    fn spectrum(k: usize) -> Vec<String> {
        (0..k).map(|i| format!("v{i}")).collect()
    }

    /// Stores one family member per class and returns the observable.
    /// `class[s]` is the eigen-class of `s`; `targets[s][i]` is where a
    /// contingent `s` goes under value `i`, if that value is possible.
    fn family(
        &mut self,
        name: String,
        k: usize,
        class: &[Option<usize>],
        targets: &[Vec<Option<usize>>],
    ) -> Observable {
        let n = self.space.len();
        let mut family = Vec::with_capacity(k);
        for i in 0..k {
            let mut yes = vec![StateRef::Zero; n];
            let mut no = vec![StateRef::Zero; n];
            for s in 0..n {
                match class[s] {
                    Some(j) if j == i => yes[s] = target(Some(&s)),
                    Some(_) => no[s] = target(Some(&s)),
                    None => {
                        yes[s] = target(targets[s][i].as_ref());
                        no[s] = target(
                            targets[s]
                                .iter()
                                .enumerate()
                                .filter(|&(j, _)| j != i)
                                .find_map(|(_, t)| t.as_ref()),
                        );
                    }
                }
            }
            let p = Proposition::new(
                self.next_prop_name(),
                PropMap::new(Arc::clone(&self.space), yes).expect("total"),
                PropMap::new(Arc::clone(&self.space), no).expect("total"),
            )
            .expect("same space");
            self.props.push(p.clone());
            family.push((format!("v{i}"), p));
        }
        Observable::new(name, Self::spectrum(k), family).expect("family covers the spectrum")
    }

    /// A fresh `k`-valued observable with random eigen-classes and
    /// contingent states.
    fn fresh_observable(&mut self, name: String, k: usize, block_preserving: bool) -> Observable {
        let n = self.space.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut self.rng);
        let mut class: Vec<Option<usize>> = vec![None; n];
        for (i, &s) in order.iter().enumerate() {
            class[s] = if i < k {
                Some(i)
            } else if self.rng.random_bool(0.5) {
                Some(self.rng.random_range(0..k))
            } else {
                None
            };
        }
        let regions: Vec<Vec<usize>> = if block_preserving {
            self.blocks.clone()
        } else {
            vec![(0..n).collect()]
        };
        if block_preserving {
            for region in &regions {
                if region.iter().all(|&s| class[s].is_none()) {
                    let s = *region.choose(&mut self.rng).expect("blocks are nonempty");
                    class[s] = Some(self.rng.random_range(0..k));
                }
            }
        }
        let mut targets: Vec<Vec<Option<usize>>> = vec![vec![None; k]; n];
        for region in &regions {
            let eigen: Vec<Vec<usize>> = (0..k)
                .map(|i| {
                    region
                        .iter()
                        .copied()
                        .filter(|&s| class[s] == Some(i))
                        .collect()
                })
                .collect();
            let available: Vec<usize> = (0..k).filter(|&i| !eigen[i].is_empty()).collect();
            for &s in region.iter().filter(|&&s| class[s].is_none()) {
                let mut possible: Vec<usize> = available
                    .iter()
                    .copied()
                    .filter(|_| self.rng.random_bool(0.5))
                    .collect();
                if possible.is_empty() {
                    possible.push(
                        *available
                            .choose(&mut self.rng)
                            .expect("region has an eigenstate"),
                    );
                }
                for i in possible {
                    targets[s][i] = eigen[i].choose(&mut self.rng).copied();
                }
            }
        }
        self.family(name, k, &class, &targets)
    }

    /// Every state is an eigenstate; the value is a function of the block.
    fn block_observable(&mut self, name: String, k: usize) -> Observable {
        let mut class = vec![None; self.space.len()];
        for (b, block) in self.blocks.iter().enumerate() {
            for &s in block {
                class[s] = Some(b % k);
            }
        }
        let targets = vec![vec![None; k]; self.space.len()];
        self.family(name, k, &class, &targets)
    }
}

/// Builds a valid model from `params`. The same params always give the same
/// model.
pub fn generate_model(params: &GeneratorParams) -> Result<Model, ParamError> {
    params.validate()?;
    let n = params.n_states;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let space = StateSpace::new((0..n).map(|i| format!("s{i}"))).expect("fresh names");

    let n_blocks = rng.random_range(1..=n.min(3));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut blocks = vec![Vec::new(); n_blocks];
    for (i, &s) in order.iter().enumerate() {
        let b = if i < n_blocks {
            i
        } else {
            rng.random_range(0..n_blocks)
        };
        blocks[b].push(s);
    }
    for block in &mut blocks {
        block.sort_unstable();
    }

    let mut b = Builder {
        rng,
        space: Arc::clone(&space),
        blocks,
        props: Vec::new(),
    };
    for _ in 0..params.n_props {
        let preserving = b.rng.random_bool(0.5);
        let p = b.proposition(preserving);
        b.props.push(p);
    }
    let free = b.props.len();

    let mut observables = Vec::with_capacity(params.n_obs);
    for j in 0..params.n_obs {
        let name = format!("A{j}");
        let k_max = params.max_spectrum.min(n);
        let kind = b.rng.random_range(0..4);
        let a = if k_max < 2 || (kind == 0 && free > 0) {
            if free > 0 {
                let p = b.props[b.rng.random_range(0..free)].clone();
                let np = negate(&p);
                Observable::new(
                    name,
                    Builder::spectrum(2),
                    vec![("v0".into(), p), ("v1".into(), np)],
                )
                .expect("two values")
            } else {
                Observable::new(
                    name,
                    Builder::spectrum(2),
                    vec![
                        ("v0".into(), Proposition::one(Arc::clone(&space))),
                        ("v1".into(), Proposition::zero(Arc::clone(&space))),
                    ],
                )
                .expect("two values")
            }
        } else if kind == 1 && b.blocks.len() >= 2 {
            let k = b.rng.random_range(2..=k_max.min(b.blocks.len()));
            b.block_observable(name, k)
        } else {
            let k = b.rng.random_range(2..=k_max);
            let preserving = b.rng.random_bool(0.5);
            b.fresh_observable(name, k, preserving)
        };
        observables.push(a);
    }
    Ok(Model::new(space, b.props, observables, None).expect("generated names are unique"))
}
