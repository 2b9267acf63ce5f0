//! Signal, matrix, and problem-instance types plus the least-squares
//! objective and its gradient.
//!
//! Everything here is an immutable value after construction; the
//! operations are pure functions and safe to call from any thread.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Dense real vector of ambient dimension `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalVector {
    entries: Vec<f64>,
}

impl SignalVector {
    /// Builds a signal, rejecting empty or non-finite input.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("signal must have length >= 1".into()));
        }
        if let Some(v) = entries.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite signal entry {v}")));
        }
        Ok(Self { entries })
    }

    /// All-zero signal of dimension `n`.
    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![0.0; n])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.entries
    }

    /// Squared Euclidean norm.
    pub fn norm_sq(&self) -> f64 {
        dot(&self.entries, &self.entries)
    }

    /// Indices of the nonzero entries, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, _)| i)
            .collect()
    }
}

impl core::ops::Index<usize> for SignalVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.entries[i]
    }
}

/// Dense row-major `m x n` measurement matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl MeasurementMatrix {
    /// Builds a matrix from row-major data; requires `rows * cols` finite entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument("matrix dimensions must be >= 1".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
                what: "matrix entry count",
            });
        }
        if let Some(v) = entries.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite matrix entry {v}")));
        }
        Ok(Self { rows, cols, entries })
    }

    /// `n x n` identity.
    pub fn identity(n: usize) -> Result<Self> {
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1.0;
        }
        Self::new(n, n, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// `self * x`, length `rows`.
    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: x.len(),
                what: "matvec input length",
            });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), x)).collect())
    }

    /// `self^T * v`, length `cols`.
    pub fn matvec_t(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: v.len(),
                what: "transposed matvec input length",
            });
        }
        let mut out = vec![0.0; self.cols];
        for (r, vr) in v.iter().enumerate() {
            let row = self.row(r);
            for (o, a) in out.iter_mut().zip(row) {
                *o += a * vr;
            }
        }
        Ok(out)
    }

    /// Columns as contiguous vectors, for repeated column dot products.
    pub fn columns(&self) -> Vec<Vec<f64>> {
        let mut cols = vec![vec![0.0; self.rows]; self.cols];
        for r in 0..self.rows {
            let row = self.row(r);
            for (c, col) in cols.iter_mut().enumerate() {
                col[r] = row[c];
            }
        }
        cols
    }

    /// Scales every entry by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|v| c * v).collect(),
        }
    }
}

/// A measurement pair `(phi, y)`, optionally with the ground-truth signal
/// and its sparsity level.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    phi: MeasurementMatrix,
    y: Vec<f64>,
    truth: Option<SignalVector>,
    sparsity: Option<usize>,
}

impl ProblemInstance {
    pub fn new(phi: MeasurementMatrix, y: Vec<f64>) -> Result<Self> {
        if y.len() != phi.rows() {
            return Err(Error::DimensionMismatch {
                expected: phi.rows(),
                got: y.len(),
                what: "measurement vector length",
            });
        }
        if let Some(v) = y.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite measurement entry {v}")));
        }
        Ok(Self { phi, y, truth: None, sparsity: None })
    }

    /// Attaches the ground truth used to synthesize `y`, and optionally the
    /// sparsity level it satisfies.
    pub fn with_truth(mut self, truth: SignalVector, sparsity: Option<usize>) -> Result<Self> {
        if truth.len() != self.phi.cols() {
            return Err(Error::DimensionMismatch {
                expected: self.phi.cols(),
                got: truth.len(),
                what: "ground-truth length",
            });
        }
        if let Some(s) = sparsity {
            if s == 0 {
                return Err(Error::InvalidArgument("sparsity must be >= 1".into()));
            }
            let nnz = truth.support().len();
            if nnz > s {
                return Err(Error::InvalidArgument(format!(
                    "ground truth has support size {nnz} > sparsity {s}"
                )));
            }
        }
        self.truth = Some(truth);
        self.sparsity = sparsity;
        Ok(self)
    }

    pub fn phi(&self) -> &MeasurementMatrix {
        &self.phi
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn y_norm_sq(&self) -> f64 {
        dot(&self.y, &self.y)
    }

    pub fn truth(&self) -> Option<&SignalVector> {
        self.truth.as_ref()
    }

    pub fn sparsity(&self) -> Option<usize> {
        self.sparsity
    }

    /// Residual `y - phi * x`.
    pub fn residual(&self, x: &SignalVector) -> Result<Vec<f64>> {
        let px = self.phi.matvec(x.as_slice())?;
        Ok(self.y.iter().zip(&px).map(|(a, b)| a - b).collect())
    }

    /// The least-squares objective `f(x) = ||y - phi * x||^2`.
    pub fn objective_value(&self, x: &SignalVector) -> Result<f64> {
        let r = self.residual(x)?;
        Ok(dot(&r, &r))
    }

    /// Gradient of the objective, `-2 * phi^T * (y - phi * x)`.
    pub fn gradient(&self, x: &SignalVector) -> Result<SignalVector> {
        let r = self.residual(x)?;
        let mut g = self.phi.matvec_t(&r)?;
        for v in &mut g {
            *v *= -2.0;
        }
        SignalVector::new(g)
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
