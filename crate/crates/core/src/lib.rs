//! Sparse recovery via gradient descent with sparsification.
//!
//! Solves `min ||y - phi x||^2 subject to ||x||_0 <= s` by iterating
//! `x <- H_s(x - 0.5 * gamma^-1 * grad f(x))`, where `H_s` keeps the s
//! largest-magnitude entries. When the measurement matrix carries
//! isometry bounds `alpha * ||x||^2 <= ||phi x||^2 <= beta * ||x||^2`
//! over 2s-sparse signals with `beta < 2 * alpha`, the iteration provably
//! reaches objective `eps` within
//! `ceil(ln(||y||^2 / eps) / ln(alpha / (beta - alpha)))` steps; this
//! crate certifies such bounds exactly (by support enumeration) or
//! estimates them from sampled supports, and exposes the bound
//! calculator alongside the solver.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the CLI
//! live in the companion `grades-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod combinations;
pub mod eigen;
pub mod error;
pub mod gen;
pub mod rng;
pub mod solver;
pub mod threshold;
pub mod types;

pub use bounds::{
    exact_rip_bounds, exact_rip_bounds_with_budget, sampled_rip_bounds, Provenance, RipBounds,
    DEFAULT_ENUM_BUDGET,
};
pub use combinations::{binomial, combinations};
pub use eigen::{symmetric_eigen, SymmetricEigen};
pub use error::{Error, Result};
pub use gen::{gen_gaussian_matrix, gen_sparse_signal, make_instance, AmplitudeDist};
pub use rng::SplitMix64;
pub use solver::{grades_solve, step, SolveResult, SolveStatus, SolverConfig, FALLBACK_MAX_ITERS};
pub use threshold::{hard_threshold, support};
pub use types::{MeasurementMatrix, ProblemInstance, SignalVector};
