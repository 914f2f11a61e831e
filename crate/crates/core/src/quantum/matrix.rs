//! Small dense complex matrices (row-major). Sizes here are desk scale
//! (d <= 16), so everything is the straightforward O(d^3) loop.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use super::QuantumError;

#[derive(Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl CMatrix {
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self, QuantumError> {
        if dim == 0 || data.len() != dim * dim {
            return Err(QuantumError::NotSquare);
        }
        if data.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
            return Err(QuantumError::NonFinite);
        }
        Ok(CMatrix { dim, data })
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self, QuantumError> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(QuantumError::NotSquare);
        }
        Self::new(dim, rows.into_iter().flatten().collect())
    }

    /// Real matrix from rows.
    pub fn from_real(rows: &[&[f64]]) -> Result<Self, QuantumError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| c(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = c(1.0, 0.0);
        }
        m
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m.data[i * entries.len() + i] = c(x, 0.0);
        }
        m
    }

    /// `v v†`
    pub fn outer(v: &[Complex64]) -> Self {
        let dim = v.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.data[i * dim + j] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.data.chunks(self.dim)
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * factor).collect(),
        }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    /// `self · other − other · self`
    pub fn commutator(&self, other: &CMatrix) -> CMatrix {
        &(self * other) - &(other * self)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let (n, m) = (self.dim, other.dim);
        let dim = n * m;
        let mut out = Self::zeros(dim);
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                for k in 0..m {
                    for l in 0..m {
                        out.data[(i * m + k) * dim + (j * m + l)] = a * other.get(k, l);
                    }
                }
            }
        }
        out
    }

    /// Positive semidefiniteness of a hermitian matrix via diagonally
    /// pivoted LDL†: every pivot must be >= -tol, and once the largest
    /// remaining pivot drops to <= tol the Schur complement must vanish.
    pub fn is_positive_semidefinite(&self, tol: f64) -> bool {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut remaining: Vec<usize> = (0..n).collect();
        while !remaining.is_empty() {
            let (pos, &k) = remaining
                .iter()
                .enumerate()
                .max_by(|x, y| a[x.1 * n + x.1].re.total_cmp(&a[y.1 * n + y.1].re))
                .expect("non-empty");
            let d = a[k * n + k].re;
            if d < -tol {
                return false;
            }
            if d <= tol {
                return remaining.iter().all(|&i| {
                    remaining
                        .iter()
                        .all(|&j| i == j && a[i * n + i].re >= -tol || a[i * n + j].norm() <= tol)
                });
            }
            remaining.swap_remove(pos);
            for &i in &remaining {
                let factor = a[i * n + k] / d;
                for &j in &remaining {
                    let update = factor * a[k * n + j];
                    a[i * n + j] -= update;
                }
            }
        }
        true
    }
}

fn assert_same_dim(a: &CMatrix, b: &CMatrix) {
    assert_eq!(a.dim, b.dim, "matrix dimension mismatch");
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_same_dim(self, rhs);
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_same_dim(self, rhs);
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_same_dim(self, rhs);
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<(f64, f64)>> = self
            .rows()
            .map(|r| r.iter().map(|x| (x.re, x.im)).collect())
            .collect();
        f.debug_struct("CMatrix").field("rows", &rows).finish()
    }
}
