//! Reproducible random problem instances: Gaussian measurement ensembles
//! and s-sparse ground-truth signals.
//!
//! Everything is a pure function of its arguments including the seed, so
//! two runs with the same inputs produce bit-identical values on any
//! platform.

use alloc::vec;
use alloc::vec::Vec;

use crate::bounds::sample_support_into;
use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::types::{MeasurementMatrix, ProblemInstance, SignalVector};

/// Distribution of the nonzero amplitudes of a generated signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmplitudeDist {
    /// Each nonzero is +1 or -1 with equal probability.
    PlusMinusOne,
    /// Each nonzero is a standard normal draw.
    StandardNormal,
}

/// `m x n` matrix with i.i.d. normal entries of mean 0 and variance `1/m`,
/// so columns have unit squared norm in expectation. Entries are filled in
/// row-major order, two raw draws per entry.
pub fn gen_gaussian_matrix(m: usize, n: usize, seed: u64) -> Result<MeasurementMatrix> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("matrix dimensions must be >= 1".into()));
    }
    let scale = libm::sqrt(1.0 / m as f64);
    let mut rng = SplitMix64::new(seed);
    let entries: Vec<f64> = (0..m * n).map(|_| scale * rng.next_normal()).collect();
    MeasurementMatrix::new(m, n, entries)
}

/// Signal of length `n` with exactly `s` nonzeros at a uniformly random
/// support. The support consumes `s` raw draws (Fisher-Yates partial
/// shuffle); amplitudes follow in shuffle order.
pub fn gen_sparse_signal(
    n: usize,
    s: usize,
    seed: u64,
    amplitude_dist: AmplitudeDist,
) -> Result<SignalVector> {
    if n == 0 || s == 0 {
        return Err(Error::InvalidArgument("signal length and sparsity must be >= 1".into()));
    }
    if s > n {
        return Err(Error::InvalidArgument(alloc::format!(
            "sparsity {s} exceeds signal length {n}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut support = Vec::with_capacity(s);
    sample_support_into(&mut rng, n, s, &mut support);
    let mut entries = vec![0.0; n];
    for &idx in &support {
        let v = match amplitude_dist {
            AmplitudeDist::PlusMinusOne => {
                if rng.next_u64() & 1 == 0 {
                    1.0
                } else {
                    -1.0
                }
            }
            AmplitudeDist::StandardNormal => {
                let z = rng.next_normal();
                // an exact zero draw (probability 2^-53) would shrink the support
                if z == 0.0 {
                    1.0
                } else {
                    z
                }
            }
        };
        entries[idx] = v;
    }
    SignalVector::new(entries)
}

/// Noise-free instance with `y = phi * truth`.
pub fn make_instance(
    phi: MeasurementMatrix,
    truth: SignalVector,
    sparsity: usize,
) -> Result<ProblemInstance> {
    let y = phi.matvec(truth.as_slice())?;
    ProblemInstance::new(phi, y)?.with_truth(truth, Some(sparsity))
}
