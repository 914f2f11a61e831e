//! Finite-dimensional quantum backend.
//!
//! States are density matrices, propositions are projectors acting by
//! `z ↦ PzP`, and observables are orthogonal projector families. Besides the
//! textbook formulas this module compiles a quantum system into a finite
//! [`Model`](crate::Model) via [`orbit_closure`], which serves as an
//! independent oracle for the abstract calculus.

use thiserror::Error;

use crate::GqtError;

mod density;
mod matrix;
mod orbit;
mod projector;

pub use density::{act_observable, act_projector, expectation, states_equal, DensityState};
pub use matrix::{c, CMatrix};
pub use orbit::{compatibility_gaps, orbit_closure, CompatibilityGap, Orbit};
pub use projector::{
    make_quantum_proposition, validate_projector_family, FamilyViolation, Projector,
    ProjectorFamily, QuantumProposition,
};

/// Default numerical tolerance for state identity, zero detection and
/// projector checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Non-negative comparison tolerance.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Tolerance(f64);

impl Tolerance {
    pub fn new(tol: f64) -> Result<Self, QuantumError> {
        if tol.is_finite() && tol >= 0.0 {
            Ok(Tolerance(tol))
        } else {
            Err(QuantumError::InvalidTolerance(tol))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(DEFAULT_TOL)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantumError {
    #[error("matrix must be square and non-empty")]
    NotSquare,
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not hermitian")]
    NotHermitian,
    #[error("matrix is not positive semidefinite")]
    NotPositive,
    #[error("state has zero trace")]
    ZeroTrace,
    #[error("matrix is not a projector")]
    NotProjector,
    #[error("expectation has imaginary residue {0:e}")]
    ImaginaryResidue(f64),
    #[error("tolerance must be finite and non-negative, got {0}")]
    InvalidTolerance(f64),
    #[error("projector family is empty")]
    EmptyFamily,
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("orbit closure needs at least one seed")]
    NoSeeds,
    #[error("orbit cap must be at least 1")]
    ZeroCap,
    #[error(
        "orbit exceeds cap {cap}: {discovered} states discovered, {frontier} not yet expanded"
    )]
    OrbitCapExceeded {
        cap: usize,
        discovered: usize,
        frontier: usize,
    },
    #[error("state name {0:?} is used twice")]
    NameCollision(String),
    #[error(transparent)]
    Model(#[from] GqtError),
}
