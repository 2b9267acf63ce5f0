//! The sparsified gradient-descent iteration
//! `x <- H_s(x - 0.5 * gamma^-1 * grad f(x))`
//! run from `x_0 = 0` until the objective reaches `eps` or an iteration
//! cap.
//!
//! With certified exact bounds `(alpha, beta)` at level `2s` satisfying
//! `beta < 2 * alpha` and step parameter `gamma = beta`, the objective
//! contracts by `(beta - alpha) / alpha` per iteration, which yields the
//! iteration bound in [`RipBounds::iteration_bound`]. With sampled bounds
//! the same step is a heuristic: the sampled beta underestimates the true
//! constant, so the step is slightly aggressive and no guarantee attaches.

use alloc::vec::Vec;

use crate::bounds::RipBounds;
use crate::error::{Error, Result};
use crate::threshold::hard_threshold;
use crate::types::{ProblemInstance, SignalVector};

/// Iteration cap used when no bounds inform a better one.
pub const FALLBACK_MAX_ITERS: usize = 1000;

/// Solver parameters.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Target sparsity `s` of the recovered signal.
    pub sparsity: usize,
    /// Step parameter; the analysis takes `gamma = beta` at level `2s`.
    pub gamma: f64,
    /// Stop once the objective is `<= eps`.
    pub eps: f64,
    /// Hard iteration cap.
    pub max_iters: usize,
    /// Bounds at level `2 * sparsity`, when available. Presence turns on
    /// the convergence-condition check; exact provenance makes the
    /// iteration bound a guarantee.
    pub bounds: Option<RipBounds>,
}

impl SolverConfig {
    /// Config with `gamma = bounds.beta` and an iteration cap of ten times
    /// the predicted bound (when the convergence condition holds; the
    /// fallback cap otherwise).
    pub fn from_bounds(sparsity: usize, eps: f64, y_norm_sq: f64, bounds: RipBounds) -> Result<Self> {
        let max_iters = match bounds.iteration_bound(y_norm_sq, eps) {
            Ok(predicted) => ((predicted as usize).saturating_mul(10)).max(1),
            Err(Error::ConditionViolated { .. }) => FALLBACK_MAX_ITERS,
            Err(e) => return Err(e),
        };
        let config = Self {
            sparsity,
            gamma: bounds.beta(),
            eps,
            max_iters,
            bounds: Some(bounds),
        };
        config.validate()?;
        Ok(config)
    }

    /// Config for a caller-chosen step with no attached bounds.
    pub fn heuristic(sparsity: usize, gamma: f64, eps: f64) -> Result<Self> {
        let config = Self { sparsity, gamma, eps, max_iters: FALLBACK_MAX_ITERS, bounds: None };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.sparsity == 0 {
            return Err(Error::InvalidArgument("sparsity must be >= 1".into()));
        }
        if !self.gamma.is_finite() || self.gamma <= 0.0 {
            return Err(Error::InvalidArgument(alloc::format!(
                "gamma must be positive and finite, got {}",
                self.gamma
            )));
        }
        if !self.eps.is_finite() || self.eps <= 0.0 {
            return Err(Error::InvalidArgument(alloc::format!(
                "eps must be positive and finite, got {}",
                self.eps
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidArgument("max_iters must be >= 1".into()));
        }
        if let Some(b) = &self.bounds {
            if b.sparsity() != 2 * self.sparsity {
                return Err(Error::InvalidArgument(alloc::format!(
                    "bounds are at level {}, solver needs level {}",
                    b.sparsity(),
                    2 * self.sparsity
                )));
            }
        }
        Ok(())
    }
}

/// Why the solve loop stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    /// Final objective <= eps.
    Converged,
    /// Iteration cap hit with the objective still above eps.
    IterationCapReached,
    /// Bounds were supplied but `beta < 2 * alpha` fails, so no guarantee
    /// applies. The run is still completed best-effort and this status is
    /// reported regardless of the final objective.
    ConditionViolated,
}

/// Outcome of a solve: the recovered signal, the full objective trace
/// `f(x_0), f(x_1), ...`, and the stop reason.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub x: SignalVector,
    pub trace: Vec<f64>,
    pub status: SolveStatus,
    pub iterations: usize,
}

impl SolveResult {
    pub fn final_objective(&self) -> f64 {
        *self.trace.last().expect("trace holds at least f(x_0)")
    }
}

/// One update `H_s(x + gamma^-1 * phi^T (y - phi x))`; this equals the
/// gradient step `x - 0.5 * gamma^-1 * grad f(x)` followed by hard
/// thresholding.
pub fn step(
    instance: &ProblemInstance,
    x: &SignalVector,
    gamma: f64,
    s: usize,
) -> Result<SignalVector> {
    if !gamma.is_finite() || gamma <= 0.0 {
        return Err(Error::InvalidArgument(alloc::format!(
            "gamma must be positive and finite, got {gamma}"
        )));
    }
    let r = instance.residual(x)?;
    let correction = instance.phi().matvec_t(&r)?;
    let inv = 1.0 / gamma;
    let moved: Vec<f64> = x
        .as_slice()
        .iter()
        .zip(&correction)
        .map(|(xi, ci)| xi + inv * ci)
        .collect();
    hard_threshold(&SignalVector::new(moved)?, s)
}

/// Runs the iteration from `x_0 = 0` until `f(x) <= eps` or
/// `config.max_iters` steps, recording every objective value.
pub fn grades_solve(instance: &ProblemInstance, config: &SolverConfig) -> Result<SolveResult> {
    config.validate()?;
    if config.sparsity > instance.phi().cols() {
        return Err(Error::InvalidArgument(alloc::format!(
            "sparsity {} exceeds signal dimension {}",
            config.sparsity,
            instance.phi().cols()
        )));
    }

    let condition_violated = config.bounds.as_ref().is_some_and(|b| !b.condition_ok());

    let mut x = SignalVector::zeros(instance.phi().cols())?;
    let mut trace = Vec::with_capacity(16);
    trace.push(instance.objective_value(&x)?);

    let mut iterations = 0;
    while trace[iterations] > config.eps && iterations < config.max_iters {
        x = step(instance, &x, config.gamma, config.sparsity)?;
        trace.push(instance.objective_value(&x)?);
        iterations += 1;
    }

    let status = if condition_violated {
        SolveStatus::ConditionViolated
    } else if trace[iterations] <= config.eps {
        SolveStatus::Converged
    } else {
        SolveStatus::IterationCapReached
    };

    Ok(SolveResult { x, trace, status, iterations })
}
