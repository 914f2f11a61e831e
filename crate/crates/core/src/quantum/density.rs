//! Density states and the quantum formulas `z(A) = tr(zA)/tr(z)` and
//! `A(z) = AzA`.

use num_complex::Complex64;

use super::matrix::CMatrix;
use super::projector::Projector;
use super::{QuantumError, Tolerance};

/// Non-zero, hermitian, positive semidefinite matrix. `z` and `c·z` (c > 0)
/// denote the same state.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityState {
    matrix: CMatrix,
}

fn scaled_tol(m: &CMatrix, tol: Tolerance) -> f64 {
    tol.value() * m.max_abs().max(1.0)
}

impl DensityState {
    pub fn new(matrix: CMatrix, tol: Tolerance) -> Result<Self, QuantumError> {
        let t = scaled_tol(&matrix, tol);
        if !matrix.is_hermitian(t) {
            return Err(QuantumError::NotHermitian);
        }
        if matrix.trace().re <= tol.value() {
            return Err(QuantumError::ZeroTrace);
        }
        if !matrix.is_positive_semidefinite(t) {
            return Err(QuantumError::NotPositive);
        }
        Ok(DensityState { matrix })
    }

    /// The pure state `v v†`.
    pub fn pure(v: &[Complex64], tol: Tolerance) -> Result<Self, QuantumError> {
        if v.is_empty() {
            return Err(QuantumError::NotSquare);
        }
        Self::new(CMatrix::outer(v), tol)
    }

    /// Pure state from real amplitudes.
    pub fn pure_real(v: &[f64], tol: Tolerance) -> Result<Self, QuantumError> {
        let v: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::pure(&v, tol)
    }

    /// Results of `AzA` are positive by construction.
    pub(crate) fn unchecked(matrix: CMatrix) -> Self {
        DensityState { matrix }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Trace-normalized matrix.
    pub fn normalized(&self) -> CMatrix {
        self.matrix.scale(Complex64::new(1.0 / self.trace(), 0.0))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        DensityState {
            matrix: self.matrix.scale(Complex64::new(factor, 0.0)),
        }
    }
}

fn check_dim(expected: usize, got: usize) -> Result<(), QuantumError> {
    if expected != got {
        return Err(QuantumError::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// `tr(zA)/tr(z)` for hermitian `A`.
pub fn expectation(z: &DensityState, a: &CMatrix, tol: Tolerance) -> Result<f64, QuantumError> {
    check_dim(z.dim(), a.dim())?;
    if !a.is_hermitian(scaled_tol(a, tol)) {
        return Err(QuantumError::NotHermitian);
    }
    let value = (z.matrix() * a).trace() / z.trace();
    if value.im.abs() > tol.value() {
        return Err(QuantumError::ImaginaryResidue(value.im));
    }
    Ok(value.re)
}

/// `AzA` for a hermitian `A`, unnormalized. `None` is the zero state, reported
/// when `tr(AzA)/tr(z) <= tol`.
pub fn act_observable(
    z: &DensityState,
    a: &CMatrix,
    tol: Tolerance,
) -> Result<Option<DensityState>, QuantumError> {
    check_dim(z.dim(), a.dim())?;
    if !a.is_hermitian(scaled_tol(a, tol)) {
        return Err(QuantumError::NotHermitian);
    }
    let out = &(a * z.matrix()) * a;
    if out.trace().re / z.trace() <= tol.value() {
        return Ok(None);
    }
    Ok(Some(DensityState::unchecked(out)))
}

/// `PzP`, trace-normalized. `None` means "yes" is impossible in `z`.
pub fn act_projector(
    z: &DensityState,
    p: &Projector,
    tol: Tolerance,
) -> Result<Option<DensityState>, QuantumError> {
    check_dim(z.dim(), p.dim())?;
    let m = p.matrix();
    let out = &(m * z.matrix()) * m;
    let weight = out.trace().re / z.trace();
    if weight <= tol.value() {
        return Ok(None);
    }
    let normalized = out.scale(Complex64::new(1.0 / out.trace().re, 0.0));
    Ok(Some(DensityState::unchecked(normalized)))
}

/// Equality of trace-normalized matrices within `tol` (inclusive), entrywise.
pub fn states_equal(
    a: &DensityState,
    b: &DensityState,
    tol: Tolerance,
) -> Result<bool, QuantumError> {
    check_dim(a.dim(), b.dim())?;
    Ok(a.normalized().max_abs_diff(&b.normalized()) <= tol.value())
}
