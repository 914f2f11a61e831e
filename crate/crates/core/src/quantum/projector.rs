//! Projectors, projector families and the propositions they induce.

use std::fmt;

use serde::Serialize;

use super::density::{act_projector, DensityState};
use super::matrix::CMatrix;
use super::{QuantumError, Tolerance};
use crate::proposition::Outcome;

/// Hermitian idempotent matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    matrix: CMatrix,
}

impl Projector {
    pub fn new(matrix: CMatrix, tol: Tolerance) -> Result<Self, QuantumError> {
        if !matrix.is_hermitian(tol.value()) {
            return Err(QuantumError::NotHermitian);
        }
        if (&matrix * &matrix).max_abs_diff(&matrix) > tol.value() {
            return Err(QuantumError::NotProjector);
        }
        Ok(Projector { matrix })
    }

    /// Orthogonal projector onto the span of `v` (need not be normalized).
    pub fn onto(v: &[num_complex::Complex64], tol: Tolerance) -> Result<Self, QuantumError> {
        let norm2: f64 = v.iter().map(|x| x.norm_sqr()).sum();
        if norm2 <= tol.value() {
            return Err(QuantumError::ZeroTrace);
        }
        let m = CMatrix::outer(v).scale(num_complex::Complex64::new(1.0 / norm2, 0.0));
        Self::new(m, tol)
    }

    pub fn onto_real(v: &[f64], tol: Tolerance) -> Result<Self, QuantumError> {
        let v: Vec<_> = v
            .iter()
            .map(|&x| num_complex::Complex64::new(x, 0.0))
            .collect();
        Self::onto(&v, tol)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `I − P`
    pub fn complement(&self) -> Projector {
        Projector {
            matrix: &CMatrix::identity(self.dim()) - &self.matrix,
        }
    }

    pub fn commutator_norm(&self, other: &Projector) -> f64 {
        self.matrix.commutator(&other.matrix).max_abs()
    }
}

/// The proposition action of a projector: yes is `z ↦ PzP`, no is
/// `z ↦ (I−P)z(I−P)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumProposition {
    pub yes: Projector,
    pub no: Projector,
}

impl QuantumProposition {
    pub fn projector(&self, outcome: Outcome) -> &Projector {
        match outcome {
            Outcome::Yes => &self.yes,
            Outcome::No => &self.no,
        }
    }

    pub fn apply(
        &self,
        outcome: Outcome,
        z: &DensityState,
        tol: Tolerance,
    ) -> Result<Option<DensityState>, QuantumError> {
        act_projector(z, self.projector(outcome), tol)
    }
}

pub fn make_quantum_proposition(p: &Projector) -> QuantumProposition {
    QuantumProposition {
        yes: p.clone(),
        no: p.complement(),
    }
}

/// Labelled matrices meant to realize an observable's family.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorFamily {
    labels: Vec<String>,
    members: Vec<CMatrix>,
}

impl ProjectorFamily {
    pub fn new(members: Vec<(String, CMatrix)>) -> Result<Self, QuantumError> {
        let Some(first) = members.first() else {
            return Err(QuantumError::EmptyFamily);
        };
        let dim = first.1.dim();
        let mut labels = Vec::with_capacity(members.len());
        let mut mats = Vec::with_capacity(members.len());
        for (label, m) in members {
            if m.dim() != dim {
                return Err(QuantumError::DimensionMismatch {
                    expected: dim,
                    got: m.dim(),
                });
            }
            if labels.contains(&label) {
                return Err(QuantumError::DuplicateLabel(label));
            }
            labels.push(label);
            mats.push(m);
        }
        Ok(ProjectorFamily {
            labels,
            members: mats,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn members(&self) -> impl Iterator<Item = (&str, &CMatrix)> {
        self.labels.iter().map(String::as_str).zip(&self.members)
    }

    pub fn dim(&self) -> usize {
        self.members[0].dim()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FamilyViolation {
    NotProjector {
        label: String,
    },
    NotOrthogonal {
        left: String,
        right: String,
        norm: f64,
    },
    NotComplete {
        deviation: f64,
    },
}

impl fmt::Display for FamilyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyViolation::NotProjector { label } => write!(f, "{label} is not a projector"),
            FamilyViolation::NotOrthogonal { left, right, norm } => {
                write!(f, "{left}·{right} has max entry {norm:.9}")
            }
            FamilyViolation::NotComplete { deviation } => {
                write!(f, "family sums to identity only within {deviation:.9}")
            }
        }
    }
}

/// Projector property, pairwise orthogonality and resolution of identity.
pub fn validate_projector_family(f: &ProjectorFamily, tol: Tolerance) -> Vec<FamilyViolation> {
    let mut out = Vec::new();
    for (label, m) in f.members() {
        if Projector::new(m.clone(), tol).is_err() {
            out.push(FamilyViolation::NotProjector {
                label: label.to_string(),
            });
        }
    }
    for i in 0..f.members.len() {
        for j in (i + 1)..f.members.len() {
            let norm = (&f.members[i] * &f.members[j]).max_abs();
            if norm > tol.value() {
                out.push(FamilyViolation::NotOrthogonal {
                    left: f.labels[i].clone(),
                    right: f.labels[j].clone(),
                    norm,
                });
            }
        }
    }
    let sum = f
        .members
        .iter()
        .fold(CMatrix::zeros(f.dim()), |acc, m| &acc + m);
    let deviation = sum.max_abs_diff(&CMatrix::identity(f.dim()));
    if deviation > tol.value() {
        out.push(FamilyViolation::NotComplete { deviation });
    }
    out
}
