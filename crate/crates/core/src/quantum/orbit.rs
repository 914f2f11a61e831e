//! Orbit closure: compiles seed density states and projectors into a finite
//! GQT model.
//!
//! States are explored breadth-first: seeds first, then for every state each
//! projector in the given order, yes-image before no-image. Images are
//! trace-normalized and deduplicated with [`states_equal`]. The `k`-th
//! discovered state is named `s<k>` unless [`Orbit::relabel`] names it.

use std::sync::Arc;

use serde::Serialize;

use super::density::{act_projector, states_equal, DensityState};
use super::projector::{make_quantum_proposition, Projector};
use super::{QuantumError, Tolerance};
use crate::compat::compatible;
use crate::model::Model;
use crate::proposition::{Outcome, PropMap, Proposition};
use crate::state::{StateId, StateRef, StateSpace};

#[derive(Debug, Clone)]
pub struct Orbit {
    /// Trace-normalized states in discovery order; `states[i]` is the
    /// model's `i`-th state.
    pub states: Vec<DensityState>,
    pub model: Model,
    tol: Tolerance,
}

fn find(
    states: &[DensityState],
    z: &DensityState,
    tol: Tolerance,
) -> Result<Option<usize>, QuantumError> {
    for (i, s) in states.iter().enumerate() {
        if states_equal(s, z, tol)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

pub fn orbit_closure(
    seeds: &[DensityState],
    propositions: &[(String, Projector)],
    cap: usize,
    tol: Tolerance,
) -> Result<Orbit, QuantumError> {
    if cap == 0 {
        return Err(QuantumError::ZeroCap);
    }
    let Some(first) = seeds.first() else {
        return Err(QuantumError::NoSeeds);
    };
    let dim = first.dim();
    for d in seeds
        .iter()
        .map(DensityState::dim)
        .chain(propositions.iter().map(|(_, p)| p.dim()))
    {
        if d != dim {
            return Err(QuantumError::DimensionMismatch {
                expected: dim,
                got: d,
            });
        }
    }
    let actions: Vec<_> = propositions
        .iter()
        .map(|(_, p)| make_quantum_proposition(p))
        .collect();

    let mut states: Vec<DensityState> = Vec::new();
    let discover = |states: &mut Vec<DensityState>, z: DensityState, expanded: usize| {
        if let Some(i) = find(states, &z, tol)? {
            return Ok(i);
        }
        states.push(z);
        if states.len() > cap {
            return Err(QuantumError::OrbitCapExceeded {
                cap,
                discovered: states.len(),
                frontier: states.len() - expanded,
            });
        }
        Ok(states.len() - 1)
    };
    for seed in seeds {
        let z = DensityState::unchecked(seed.normalized());
        discover(&mut states, z, 0)?;
    }
    // transitions[state][proposition] = (yes target, no target)
    let mut transitions: Vec<Vec<[Option<usize>; 2]>> = Vec::new();
    let mut next = 0;
    while next < states.len() {
        let z = states[next].clone();
        let mut row = Vec::with_capacity(actions.len());
        for action in &actions {
            let mut targets = [None, None];
            for (slot, outcome) in [Outcome::Yes, Outcome::No].into_iter().enumerate() {
                if let Some(image) = act_projector(&z, action.projector(outcome), tol)? {
                    targets[slot] = Some(discover(&mut states, image, next + 1)?);
                }
            }
            row.push(targets);
        }
        transitions.push(row);
        next += 1;
    }

    let space = StateSpace::new((0..states.len()).map(|i| format!("s{i}")))?;
    let to_ref = |t: Option<usize>| match t {
        Some(i) => StateRef::Proper(StateId(i as u32)),
        None => StateRef::Zero,
    };
    let props = propositions
        .iter()
        .enumerate()
        .map(|(k, (name, _))| {
            let yes = transitions.iter().map(|row| to_ref(row[k][0])).collect();
            let no = transitions.iter().map(|row| to_ref(row[k][1])).collect();
            Proposition::new(
                name.clone(),
                PropMap::new(Arc::clone(&space), yes)?,
                PropMap::new(Arc::clone(&space), no)?,
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let model = Model::new(space, props, Vec::new(), None)?;
    Ok(Orbit { states, model, tol })
}

impl Orbit {
    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    /// Renames every state that matches a labelled reference state (first
    /// matching label wins). Unmatched states keep `s<k>`.
    pub fn relabel(&self, labels: &[(String, DensityState)]) -> Result<Orbit, QuantumError> {
        let mut names = Vec::with_capacity(self.states.len());
        for (i, z) in self.states.iter().enumerate() {
            let mut name = format!("s{i}");
            for (label, reference) in labels {
                if states_equal(z, reference, self.tol)? {
                    name = label.clone();
                    break;
                }
            }
            names.push(name);
        }
        let model = self.model.renamed_states(names).map_err(|e| match e {
            crate::GqtError::DuplicateName { name, .. } => QuantumError::NameCollision(name),
            other => QuantumError::Model(other),
        })?;
        Ok(Orbit {
            states: self.states.clone(),
            model,
            tol: self.tol,
        })
    }

    pub fn with_model(&self, model: Model) -> Orbit {
        Orbit {
            states: self.states.clone(),
            model,
            tol: self.tol,
        }
    }

    /// Index of the orbit state equal to `z`, if any.
    pub fn locate(&self, z: &DensityState) -> Result<Option<StateId>, QuantumError> {
        Ok(find(&self.states, z, self.tol)?.map(|i| StateId(i as u32)))
    }
}

/// A projector pair that is compatible on the orbit although the matrices do
/// not commute.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompatibilityGap {
    pub left: String,
    pub right: String,
    pub commutator_norm: f64,
}

/// Samples the question whether orbit compatibility implies commutation:
/// lists every pair of supplied projectors that the model finds compatible
/// but whose commutator exceeds the orbit tolerance.
pub fn compatibility_gaps(
    orbit: &Orbit,
    propositions: &[(String, Projector)],
) -> Result<Vec<CompatibilityGap>, QuantumError> {
    let mut out = Vec::new();
    for i in 0..propositions.len() {
        for j in (i + 1)..propositions.len() {
            let (ln, lp) = &propositions[i];
            let (rn, rp) = &propositions[j];
            let norm = lp.commutator_norm(rp);
            if norm <= orbit.tol.value() {
                continue;
            }
            let p = orbit.model.proposition(ln)?;
            let q = orbit.model.proposition(rn)?;
            if compatible(&p, &q)? {
                out.push(CompatibilityGap {
                    left: ln.clone(),
                    right: rn.clone(),
                    commutator_norm: norm,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_model;
    use crate::quantum::CMatrix;

    const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn t() -> Tolerance {
        Tolerance::default()
    }

    fn ket(v: &[f64]) -> DensityState {
        DensityState::pure_real(v, t()).unwrap()
    }

    fn proj(v: &[f64]) -> Projector {
        Projector::onto_real(v, t()).unwrap()
    }

    #[test]
    fn qubit_z_and_x_close_to_four_states() {
        let props = vec![
            ("Z0".to_string(), proj(&[1.0, 0.0])),
            ("Xp".to_string(), proj(&[S, S])),
        ];
        let orbit = orbit_closure(&[ket(&[1.0, 0.0])], &props, 256, t()).unwrap();
        assert_eq!(orbit.states.len(), 4);
        // Discovery order: |0>, then Xp yes |+>, Xp no |->, then Z0 no on |+> gives |1>.
        let expected = [
            ket(&[1.0, 0.0]),
            ket(&[S, S]),
            ket(&[S, -S]),
            ket(&[0.0, 1.0]),
        ];
        for (got, want) in orbit.states.iter().zip(&expected) {
            assert!(states_equal(got, want, t()).unwrap());
        }
        assert_eq!(orbit.model.space().names(), ["s0", "s1", "s2", "s3"]);
        assert!(validate_model(&orbit.model).is_empty());
    }

    #[test]
    fn single_projector_fixing_the_seed() {
        let props = vec![("Z0".to_string(), proj(&[1.0, 0.0]))];
        let orbit = orbit_closure(&[ket(&[1.0, 0.0])], &props, 256, t()).unwrap();
        assert_eq!(orbit.states.len(), 1);
        let orbit = orbit_closure(&[ket(&[1.0, 0.0]), ket(&[0.0, 1.0])], &props, 256, t()).unwrap();
        assert_eq!(orbit.states.len(), 2);
        // Duplicate seeds collapse, including rescaled ones.
        let orbit = orbit_closure(&[ket(&[1.0, 0.0]), ket(&[3.0, 0.0])], &props, 256, t()).unwrap();
        assert_eq!(orbit.states.len(), 1);
    }

    #[test]
    fn rank_one_projections_in_two_dimensions_stay_finite() {
        let props = vec![("T".to_string(), proj(&[1f64.cos(), 1f64.sin()]))];
        let orbit = orbit_closure(&[ket(&[1.0, 0.0])], &props, 32, t()).unwrap();
        assert_eq!(orbit.states.len(), 3);
    }

    #[test]
    fn planes_at_irrational_angle_exceed_the_cap() {
        let plane = |n: [f64; 3]| {
            let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
            let n: Vec<_> = n.iter().map(|x| x / norm).collect();
            let m = &CMatrix::identity(3) - Projector::onto_real(&n, t()).unwrap().matrix();
            Projector::new(m, t()).unwrap()
        };
        let props = vec![
            ("A".to_string(), plane([0.0, 0.0, 1.0])),
            ("B".to_string(), plane([0.0, 1f64.sin(), 1f64.cos()])),
        ];
        let err = orbit_closure(&[ket(&[1.0, 1.0, 1.0])], &props, 32, t()).unwrap_err();
        match err {
            QuantumError::OrbitCapExceeded {
                cap,
                discovered,
                frontier,
            } => {
                assert_eq!(cap, 32);
                assert_eq!(discovered, 33);
                assert!(frontier > 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn argument_errors() {
        let props = vec![("Z0".to_string(), proj(&[1.0, 0.0]))];
        assert_eq!(
            orbit_closure(&[], &props, 4, t()).unwrap_err(),
            QuantumError::NoSeeds
        );
        assert_eq!(
            orbit_closure(&[ket(&[1.0, 0.0])], &props, 0, t()).unwrap_err(),
            QuantumError::ZeroCap
        );
        assert!(matches!(
            orbit_closure(&[ket(&[1.0, 0.0, 0.0])], &props, 4, t()).unwrap_err(),
            QuantumError::DimensionMismatch { .. }
        ));
    }

    #[test]
    fn relabel_names_matching_states() {
        let props = vec![
            ("Z0".to_string(), proj(&[1.0, 0.0])),
            ("Xp".to_string(), proj(&[S, S])),
        ];
        let orbit = orbit_closure(&[ket(&[1.0, 0.0])], &props, 256, t()).unwrap();
        let labels = vec![
            ("z0".to_string(), ket(&[1.0, 0.0])),
            ("zm".to_string(), ket(&[1.0, -1.0])),
        ];
        let named = orbit.relabel(&labels).unwrap();
        assert_eq!(named.model.space().names(), ["z0", "s1", "zm", "s3"]);
        let clash = vec![("s3".to_string(), ket(&[1.0, 0.0]))];
        assert_eq!(
            orbit.relabel(&clash).unwrap_err(),
            QuantumError::NameCollision("s3".into())
        );
    }

    #[test]
    fn gap_between_orbit_compatibility_and_commutation() {
        // On the orbit {|2>} both projectors act trivially, yet they do not commute.
        let props = vec![
            ("P".to_string(), proj(&[1.0, 0.0, 0.0])),
            ("Q".to_string(), proj(&[S, S, 0.0])),
        ];
        let orbit = orbit_closure(&[ket(&[0.0, 0.0, 1.0])], &props, 16, t()).unwrap();
        assert_eq!(orbit.states.len(), 1);
        let gaps = compatibility_gaps(&orbit, &props).unwrap();
        assert_eq!(gaps.len(), 1);
        assert!((gaps[0].commutator_norm - 0.5).abs() < 1e-12);
        // Commuting projectors never show up.
        let commuting = vec![
            ("P".to_string(), proj(&[1.0, 0.0, 0.0])),
            ("R".to_string(), proj(&[0.0, 1.0, 0.0])),
        ];
        let orbit = orbit_closure(&[ket(&[1.0, 1.0, 1.0])], &commuting, 16, t()).unwrap();
        assert!(compatibility_gaps(&orbit, &commuting).unwrap().is_empty());
    }
}
