//! The quantum document: seed states and projectors to be compiled into a
//! model by orbit closure.
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "seeds": { "z0": [[1, 0], [0, 0]] },
//!   "propositions": { "Z0": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]] },
//!   "observables": { "Z": { "spectrum": ["0", "1"], "family": { "0": "Z0", "1": "¬Z0" } } },
//!   "cap": 256,
//!   "tolerance": 1e-9
//! }
//! ```
//!
//! Every number is a complex `[re, im]` pair. A seed or label given as a
//! vector `v` is the pure state `vv†`; a matrix is taken as a density
//! matrix. `labels` names further orbit states; `partition` is copied to
//! the built model unchanged.

use serde::Deserialize;

use super::model_doc::{build_observables, RawObservable, RawPartition};
use super::ordered::OrderedMap;
use super::DocError;
use crate::model::{validate_model, Partition};
use crate::proposition::{NEGATION_PREFIX, ONE, ZERO};
use crate::quantum::{
    c, compatibility_gaps, orbit_closure, validate_projector_family, CMatrix, CompatibilityGap,
    DensityState, FamilyViolation, Orbit, Projector, ProjectorFamily, QuantumError, Tolerance,
};
use crate::validation::Report;

/// Orbit cap used when neither the document nor the caller sets one.
pub const DEFAULT_CAP: usize = 256;

type RawMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum RawState {
    Vector(Vec<[f64; 2]>),
    Matrix(RawMatrix),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuantum {
    dimension: usize,
    seeds: OrderedMap<RawState>,
    propositions: OrderedMap<RawMatrix>,
    #[serde(default)]
    observables: OrderedMap<RawObservable>,
    #[serde(default)]
    partition: Option<RawPartition>,
    #[serde(default)]
    labels: OrderedMap<RawState>,
    #[serde(default)]
    cap: Option<usize>,
    #[serde(default)]
    tolerance: Option<f64>,
}

#[derive(Debug, Clone)]
enum StateInput {
    Vector(Vec<num_complex::Complex64>),
    Matrix(CMatrix),
}

/// A parsed quantum document. Matrices are checked for shape here and for
/// hermiticity, positivity and idempotence when the model is built, since
/// those checks depend on the tolerance.
#[derive(Debug, Clone)]
pub struct QuantumDocument {
    pub dimension: usize,
    seeds: Vec<(String, StateInput)>,
    propositions: Vec<(String, CMatrix)>,
    observables: OrderedMap<RawObservable>,
    partition: Option<Partition>,
    labels: Vec<(String, StateInput)>,
    pub cap: Option<usize>,
    pub tolerance: Option<f64>,
}

fn matrix(raw: &RawMatrix, dim: usize, path: &str) -> Result<CMatrix, DocError> {
    if raw.len() != dim || raw.iter().any(|row| row.len() != dim) {
        return Err(DocError::field(
            path,
            format!("expected a {dim}x{dim} matrix"),
        ));
    }
    let rows = raw
        .iter()
        .map(|row| row.iter().map(|&[re, im]| c(re, im)).collect())
        .collect();
    CMatrix::from_rows(rows).map_err(|e| DocError::quantum(path, e))
}

fn state(raw: &RawState, dim: usize, path: &str) -> Result<StateInput, DocError> {
    match raw {
        RawState::Vector(v) => {
            if v.len() != dim {
                return Err(DocError::field(
                    path,
                    format!("expected a vector of length {dim}, got {}", v.len()),
                ));
            }
            Ok(StateInput::Vector(
                v.iter().map(|&[re, im]| c(re, im)).collect(),
            ))
        }
        RawState::Matrix(m) => Ok(StateInput::Matrix(matrix(m, dim, path)?)),
    }
}

impl StateInput {
    fn density(&self, tol: Tolerance, path: &str) -> Result<DensityState, DocError> {
        match self {
            StateInput::Vector(v) => DensityState::pure(v, tol),
            StateInput::Matrix(m) => DensityState::new(m.clone(), tol),
        }
        .map_err(|e| DocError::quantum(path, e))
    }
}

pub fn parse_quantum(text: &str) -> Result<QuantumDocument, DocError> {
    let raw: RawQuantum = serde_json::from_str(text)?;
    let dim = raw.dimension;
    if dim == 0 {
        return Err(DocError::field("dimension", "must be at least 1"));
    }
    let seeds = raw
        .seeds
        .iter()
        .map(|(name, s)| Ok((name.to_string(), state(s, dim, &format!("seeds.{name}"))?)))
        .collect::<Result<Vec<_>, DocError>>()?;
    let labels = raw
        .labels
        .iter()
        .map(|(name, s)| Ok((name.to_string(), state(s, dim, &format!("labels.{name}"))?)))
        .collect::<Result<Vec<_>, DocError>>()?;
    let mut propositions = Vec::new();
    for (name, m) in raw.propositions.iter() {
        let path = format!("propositions.{name}");
        if name == ONE || name == ZERO || name.starts_with(NEGATION_PREFIX) {
            return Err(DocError::field(path, format!("reserved name {name:?}")));
        }
        propositions.push((name.to_string(), matrix(m, dim, &path)?));
    }
    for (name, _) in &labels {
        if seeds.iter().any(|(s, _)| s == name) {
            return Err(DocError::field(
                format!("labels.{name}"),
                "name already used by a seed",
            ));
        }
    }
    let partition = raw
        .partition
        .as_ref()
        .map(RawPartition::build)
        .transpose()?;
    Ok(QuantumDocument {
        dimension: dim,
        seeds,
        propositions,
        observables: raw.observables,
        partition,
        labels,
        cap: raw.cap,
        tolerance: raw.tolerance,
    })
}

/// The outcome of compiling a quantum document.
#[derive(Debug, Clone)]
pub struct QuantumBuild {
    pub orbit: Orbit,
    pub propositions: Vec<(String, Projector)>,
    pub cap: usize,
    pub tolerance: Tolerance,
    /// Law violations of the built model (empty for a well-formed input).
    pub report: Report,
    /// Observable families that are not orthogonal resolutions of identity
    /// as matrices.
    pub family_violations: Vec<(String, Vec<FamilyViolation>)>,
    pub gaps: Vec<CompatibilityGap>,
}

impl QuantumDocument {
    /// Compiles the document. Explicit `cap`/`tol` arguments override the
    /// document, which overrides the defaults.
    pub fn build(
        &self,
        cap: Option<usize>,
        tol: Option<Tolerance>,
    ) -> Result<QuantumBuild, DocError> {
        let cap = cap.or(self.cap).unwrap_or(DEFAULT_CAP);
        let tol = match (tol, self.tolerance) {
            (Some(t), _) => t,
            (None, Some(t)) => Tolerance::new(t).map_err(|e| DocError::quantum("tolerance", e))?,
            (None, None) => Tolerance::default(),
        };
        let seeds = self
            .seeds
            .iter()
            .map(|(name, s)| Ok((name.clone(), s.density(tol, &format!("seeds.{name}"))?)))
            .collect::<Result<Vec<_>, DocError>>()?;
        let labels = self
            .labels
            .iter()
            .map(|(name, s)| Ok((name.clone(), s.density(tol, &format!("labels.{name}"))?)))
            .collect::<Result<Vec<_>, DocError>>()?;
        let propositions = self
            .propositions
            .iter()
            .map(|(name, m)| {
                let p = Projector::new(m.clone(), tol)
                    .map_err(|e| DocError::quantum(format!("propositions.{name}"), e))?;
                Ok((name.clone(), p))
            })
            .collect::<Result<Vec<_>, DocError>>()?;

        let seed_states: Vec<DensityState> = seeds.iter().map(|(_, z)| z.clone()).collect();
        let orbit = orbit_closure(&seed_states, &propositions, cap, tol)
            .map_err(|e| DocError::quantum("seeds", e))?;
        let mut names = seeds;
        names.extend(labels);
        let orbit = orbit
            .relabel(&names)
            .map_err(|e| DocError::quantum("labels", e))?;
        let observables = build_observables(&orbit.model, &self.observables)?;
        let model = orbit
            .model
            .with_observables(observables, self.partition.clone())
            .map_err(|e| DocError::model("observables", e))?;
        let orbit = orbit.with_model(model);

        let mut family_violations = Vec::new();
        for (name, obs) in self.observables.iter() {
            let members = obs
                .family
                .iter()
                .map(|(value, prop)| Ok((value.to_string(), self.matrix_of(prop, &propositions)?)))
                .collect::<Result<Vec<_>, DocError>>()?;
            let family = ProjectorFamily::new(members)
                .map_err(|e| DocError::quantum(format!("observables.{name}"), e))?;
            let v = validate_projector_family(&family, tol);
            if !v.is_empty() {
                family_violations.push((name.to_string(), v));
            }
        }
        let gaps = compatibility_gaps(&orbit, &propositions)
            .map_err(|e| DocError::quantum("propositions", e))?;
        let report = validate_model(&orbit.model);
        Ok(QuantumBuild {
            orbit,
            propositions,
            cap,
            tolerance: tol,
            report,
            family_violations,
            gaps,
        })
    }

    fn matrix_of(
        &self,
        reference: &str,
        props: &[(String, Projector)],
    ) -> Result<CMatrix, DocError> {
        let d = self.dimension;
        if reference == ONE {
            return Ok(CMatrix::identity(d));
        }
        if reference == ZERO {
            return Ok(CMatrix::zeros(d));
        }
        let (base, negated) = match reference.strip_prefix(NEGATION_PREFIX) {
            Some(rest) => (rest, true),
            None => (reference, false),
        };
        let p = props
            .iter()
            .find(|(n, _)| n == base)
            .map(|(_, p)| p)
            .ok_or_else(|| {
                DocError::model(
                    "observables",
                    crate::GqtError::UnknownProposition(reference.to_string()),
                )
            })?;
        Ok(if negated {
            p.complement().matrix().clone()
        } else {
            p.matrix().clone()
        })
    }
}

/// The orbit cap error inside `err`, if that is what failed.
pub fn cap_exceeded(err: &DocError) -> Option<&QuantumError> {
    match err {
        DocError::Quantum {
            source: e @ QuantumError::OrbitCapExceeded { .. },
            ..
        } => Some(e),
        _ => None,
    }
}
