//! The hard-thresholding operator: projection onto the set of s-sparse
//! vectors.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::types::SignalVector;

/// Keeps the `s` largest-magnitude entries of `x` (signed values intact)
/// and zeroes the rest.
///
/// Ties on magnitude are broken toward the lower index. The comparison is
/// exact; no epsilon is applied, which keeps the operator idempotent and
/// makes `support(H_s(x))` nested in `support(H_{s+1}(x))`.
pub fn hard_threshold(x: &SignalVector, s: usize) -> Result<SignalVector> {
    let n = x.len();
    if s > n {
        return Err(Error::InvalidArgument(alloc::format!(
            "sparsity {s} exceeds signal length {n}"
        )));
    }
    if s == n {
        return Ok(x.clone());
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&a, &b| {
        libm::fabs(x[b])
            .total_cmp(&libm::fabs(x[a]))
            .then(a.cmp(&b))
    });
    let mut out = vec![0.0; n];
    for &i in &order[..s] {
        out[i] = x[i];
    }
    SignalVector::new(out)
}

/// Indices of the nonzero entries of `x`, ascending.
pub fn support(x: &SignalVector) -> Vec<usize> {
    x.support()
}
