//! Generalized isometry bounds `(alpha_s, beta_s)` for a measurement
//! matrix: the tightest constants with
//! `alpha_s * ||x||^2 <= ||phi x||^2 <= beta_s * ||x||^2`
//! over all s-sparse `x`, certified by exhaustive support enumeration or
//! estimated from sampled supports.
//!
//! Exact constants are extremal Rayleigh quotients: for each size-s column
//! subset S, the eigenvalue range of the Gram submatrix `phi_S^T phi_S`
//! bounds the quotient on signals supported on S; the minimum smallest and
//! maximum largest eigenvalue over every S are the tightest valid pair.

use alloc::vec;
use alloc::vec::Vec;

use crate::combinations::{binomial, combinations};
use crate::eigen::extremal_eigenvalues;
use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::types::{dot, MeasurementMatrix};

/// Default cap on the number of supports exact enumeration may visit.
pub const DEFAULT_ENUM_BUDGET: u64 = 1_000_000;

/// How a bound pair was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Every size-s support was enumerated; the pair is certified.
    Exact,
    /// Min/max over randomly sampled supports. An inner estimate: the
    /// reported alpha is >= the true alpha_s and beta is <= the true
    /// beta_s, so the pair must not be read as a certificate.
    Sampled { trials: u64, seed: u64 },
}

/// A bound pair `(alpha, beta)` at sparsity level `sparsity`.
#[derive(Debug, Clone, PartialEq)]
pub struct RipBounds {
    alpha: f64,
    beta: f64,
    sparsity: usize,
    provenance: Provenance,
}

impl RipBounds {
    /// Wraps externally obtained constants, enforcing `0 < alpha <= beta`.
    pub fn new(alpha: f64, beta: f64, sparsity: usize, provenance: Provenance) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite()) || alpha <= 0.0 || beta < alpha {
            return Err(Error::InvalidArgument(alloc::format!(
                "bounds must satisfy 0 < alpha <= beta, got ({alpha}, {beta})"
            )));
        }
        if sparsity == 0 {
            return Err(Error::InvalidArgument("sparsity level must be >= 1".into()));
        }
        Ok(Self { alpha, beta, sparsity, provenance })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn sparsity(&self) -> usize {
        self.sparsity
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.provenance, Provenance::Exact)
    }

    /// The smallest classical isometry constant consistent with the pair:
    /// `max(1 - alpha, beta - 1)`.
    pub fn delta(&self) -> f64 {
        (1.0 - self.alpha).max(self.beta - 1.0)
    }

    /// Whether `beta < 2 * alpha` (strict), the precondition of the
    /// guaranteed-convergence analysis.
    pub fn condition_ok(&self) -> bool {
        self.beta < 2.0 * self.alpha
    }

    /// Iterations sufficient to drive the objective from `y_norm_sq` down
    /// to `eps`: `ceil(ln(y_norm_sq / eps) / ln(alpha / (beta - alpha)))`.
    ///
    /// Returns 0 when `eps >= y_norm_sq` (the zero start already
    /// qualifies) and 1 when `alpha == beta` exactly (a perfect isometry;
    /// the log base diverges but one step lands on the solution).
    pub fn iteration_bound(&self, y_norm_sq: f64, eps: f64) -> Result<u64> {
        if !y_norm_sq.is_finite() || y_norm_sq <= 0.0 {
            return Err(Error::InvalidArgument(alloc::format!(
                "y_norm_sq must be positive and finite, got {y_norm_sq}"
            )));
        }
        if !eps.is_finite() || eps <= 0.0 {
            return Err(Error::InvalidArgument(alloc::format!(
                "eps must be positive and finite, got {eps}"
            )));
        }
        if !self.condition_ok() {
            return Err(Error::ConditionViolated { alpha: self.alpha, beta: self.beta });
        }
        if eps >= y_norm_sq {
            return Ok(0);
        }
        if self.beta == self.alpha {
            return Ok(1);
        }
        let num = libm::log(y_norm_sq / eps);
        let den = libm::log(self.alpha / (self.beta - self.alpha));
        Ok(libm::ceil(num / den).max(0.0) as u64)
    }
}

/// Gram submatrix `phi_S^T phi_S` (row-major `s x s`) from precomputed
/// columns.
fn gram(cols: &[Vec<f64>], support: &[usize]) -> Vec<f64> {
    let s = support.len();
    let mut g = vec![0.0; s * s];
    for a in 0..s {
        for b in 0..=a {
            let v = dot(&cols[support[a]], &cols[support[b]]);
            g[a * s + b] = v;
            g[b * s + a] = v;
        }
    }
    g
}

fn check_level(phi: &MeasurementMatrix, s: usize) -> Result<()> {
    if s == 0 {
        return Err(Error::InvalidArgument("sparsity level must be >= 1".into()));
    }
    if s > phi.cols() {
        return Err(Error::InvalidArgument(alloc::format!(
            "sparsity level {s} exceeds column count {}",
            phi.cols()
        )));
    }
    Ok(())
}

/// Certified bounds at level `s` via exhaustive lexicographic enumeration
/// of all size-s supports, under [`DEFAULT_ENUM_BUDGET`].
pub fn exact_rip_bounds(phi: &MeasurementMatrix, s: usize) -> Result<RipBounds> {
    exact_rip_bounds_with_budget(phi, s, DEFAULT_ENUM_BUDGET)
}

/// Certified bounds with an explicit enumeration budget.
pub fn exact_rip_bounds_with_budget(
    phi: &MeasurementMatrix,
    s: usize,
    budget: u64,
) -> Result<RipBounds> {
    check_level(phi, s)?;
    let supports = binomial(phi.cols(), s);
    if supports > budget as u128 {
        return Err(Error::EnumerationBudget { supports, budget });
    }
    let cols = phi.columns();
    let mut alpha = f64::INFINITY;
    let mut beta = f64::NEG_INFINITY;
    for support in combinations(phi.cols(), s) {
        let g = gram(&cols, &support);
        let (lo, hi) = extremal_eigenvalues(s, &g)?;
        alpha = alpha.min(lo);
        beta = beta.max(hi);
    }
    RipBounds::new(alpha, beta, s, Provenance::Exact)
}

/// Inner estimate of the bounds from `trials` uniformly sampled size-s
/// supports (with replacement across trials).
///
/// The estimate narrows the true interval: returned alpha >= alpha_s and
/// beta <= beta_s. Trial `t` derives its support from `(seed, t)` alone,
/// so a parallel partition over trials reproduces the sequential result.
pub fn sampled_rip_bounds(
    phi: &MeasurementMatrix,
    s: usize,
    trials: u64,
    seed: u64,
) -> Result<RipBounds> {
    check_level(phi, s)?;
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be >= 1".into()));
    }
    let cols = phi.columns();
    let mut alpha = f64::INFINITY;
    let mut beta = f64::NEG_INFINITY;
    let mut support = Vec::with_capacity(s);
    for t in 0..trials {
        let mut rng = SplitMix64::substream(seed, t);
        sample_support_into(&mut rng, phi.cols(), s, &mut support);
        let g = gram(&cols, &support);
        let (lo, hi) = extremal_eigenvalues(s, &g)?;
        alpha = alpha.min(lo);
        beta = beta.max(hi);
    }
    RipBounds::new(alpha, beta, s, Provenance::Sampled { trials, seed })
}

/// Uniform size-s support by Fisher-Yates partial shuffle; consumes
/// exactly `s` raw draws. Output order is the shuffle order.
pub(crate) fn sample_support_into(
    rng: &mut SplitMix64,
    n: usize,
    s: usize,
    out: &mut Vec<usize>,
) {
    let mut indices: Vec<usize> = (0..n).collect();
    for i in 0..s {
        let j = i + rng.next_below(n - i);
        indices.swap(i, j);
    }
    out.clear();
    out.extend_from_slice(&indices[..s]);
}
