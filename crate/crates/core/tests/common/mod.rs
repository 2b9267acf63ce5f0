//! Independent oracles for cross-checking the library: these share no code
//! with the implementation paths they verify.

#![allow(dead_code)]

/// All size-`k` subsets of `{0..n-1}` by plain recursion.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Exhaustive best-s-sparse approximation error: the minimum of
/// `||x - z||^2` over every s-sparse z, which restricts x to each size-s
/// support in turn.
pub fn best_sparse_error_sq(x: &[f64], s: usize) -> f64 {
    let n = x.len();
    let mut best = f64::INFINITY;
    for support in subsets(n, s) {
        // sum the dropped coordinates directly; subtracting the kept mass
        // from the total would cancel catastrophically for small errors
        let dropped: f64 = (0..n)
            .filter(|i| !support.contains(i))
            .map(|i| x[i] * x[i])
            .sum();
        best = best.min(dropped);
    }
    best
}

/// Number of eigenvalues of the symmetric matrix `a` (row-major n x n)
/// strictly below `shift`, by Sylvester inertia of the LDL^T pivots of
/// `a - shift * I`. Returns None when a pivot lands exactly on zero.
fn count_below_once(n: usize, a: &[f64], shift: f64) -> Option<usize> {
    let mut m = a.to_vec();
    for i in 0..n {
        m[i * n + i] -= shift;
    }
    // unpivoted Gaussian elimination: on a symmetric matrix the pivots are
    // the D entries of LDL^T, so their signs give the inertia
    let mut negatives = 0;
    for k in 0..n {
        let pivot = m[k * n + k];
        if pivot == 0.0 {
            return None;
        }
        if pivot < 0.0 {
            negatives += 1;
        }
        for i in k + 1..n {
            let f = m[i * n + k] / pivot;
            for j in k..n {
                m[i * n + j] -= f * m[k * n + j];
            }
        }
    }
    Some(negatives)
}

fn count_below(n: usize, a: &[f64], shift: f64) -> usize {
    let mut s = shift;
    let mut nudge = 1e-13 * (1.0 + shift.abs());
    loop {
        if let Some(c) = count_below_once(n, a, s) {
            return c;
        }
        s = shift + nudge;
        nudge *= 2.0;
    }
}

/// Extremal eigenvalues of a symmetric matrix by inertia bisection inside
/// the Gershgorin interval; independent of any factorization-based
/// eigensolver.
pub fn eig_range_bisect(n: usize, a: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let center = a[i * n + i];
        let radius: f64 = (0..n).filter(|&j| j != i).map(|j| a[i * n + j].abs()).sum();
        lo = lo.min(center - radius);
        hi = hi.max(center + radius);
    }
    lo -= 1.0;
    hi += 1.0;
    let tol = 1e-12 * (1.0 + hi.abs().max(lo.abs()));

    let bisect = |target: usize| -> f64 {
        // smallest x with count_below(x) >= target
        let (mut l, mut h) = (lo, hi);
        while h - l > tol {
            let mid = 0.5 * (l + h);
            if count_below(n, a, mid) >= target {
                h = mid;
            } else {
                l = mid;
            }
        }
        0.5 * (l + h)
    };

    (bisect(1), bisect(n))
}

/// Central finite difference of `f` at `x` in coordinate `i`.
pub fn central_difference(f: impl Fn(&[f64]) -> f64, x: &[f64], i: usize, h: f64) -> f64 {
    let mut plus = x.to_vec();
    let mut minus = x.to_vec();
    plus[i] += h;
    minus[i] -= h;
    (f(&plus) - f(&minus)) / (2.0 * h)
}

/// Gram submatrix of the columns of a row-major `rows x cols` matrix,
/// computed directly from the definition.
pub fn gram_direct(entries: &[f64], rows: usize, cols: usize, support: &[usize]) -> Vec<f64> {
    let s = support.len();
    let mut g = vec![0.0; s * s];
    for a in 0..s {
        for b in 0..s {
            let mut acc = 0.0;
            for r in 0..rows {
                acc += entries[r * cols + support[a]] * entries[r * cols + support[b]];
            }
            g[a * s + b] = acc;
        }
    }
    g
}

/// `||phi x||^2 / ||x||^2` computed from first principles.
pub fn rayleigh_quotient(entries: &[f64], rows: usize, cols: usize, x: &[f64]) -> f64 {
    let mut num = 0.0;
    for r in 0..rows {
        let mut acc = 0.0;
        for c in 0..cols {
            acc += entries[r * cols + c] * x[c];
        }
        num += acc * acc;
    }
    let den: f64 = x.iter().map(|v| v * v).sum();
    num / den
}

#[cfg(test)]
mod self_checks {
    use super::*;

    #[test]
    fn inertia_bisection_matches_analytic_2x2() {
        // [[2,1],[1,2]]: eigenvalues 1 and 3
        let (lo, hi) = eig_range_bisect(2, &[2.0, 1.0, 1.0, 2.0]);
        assert!((lo - 1.0).abs() < 1e-10, "{lo}");
        assert!((hi - 3.0).abs() < 1e-10, "{hi}");
    }

    #[test]
    fn inertia_bisection_handles_diagonal() {
        let a = [4.0, 0.0, 0.0, 0.0, -2.0, 0.0, 0.0, 0.0, 0.5];
        let (lo, hi) = eig_range_bisect(3, &a);
        assert!((lo + 2.0).abs() < 1e-10);
        assert!((hi - 4.0).abs() < 1e-10);
    }

    #[test]
    fn subsets_counts() {
        assert_eq!(subsets(5, 2).len(), 10);
        assert_eq!(subsets(4, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(3, 4).len(), 0);
    }
}
