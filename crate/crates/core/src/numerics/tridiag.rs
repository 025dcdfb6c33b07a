//! Eigenvalues of symmetric tridiagonal matrices by Sturm-count bisection.
//!
//! Shared by the quadrature builder (which needs every eigenvalue of a
//! recurrence matrix) and the finite-difference solver (which needs the `k`
//! lowest of a large discretized Hamiltonian).  Bisection on the inertia
//! count is deterministic, needs no full diagonalization, and its failure
//! mode — running out of iterations without isolating an index — is cleanly
//! reportable.

use crate::error::NumericsError;

/// Hard cap on bisection steps per eigenvalue.  The interval width shrinks
/// by half each step, so ~60 steps reach machine resolution from any sane
/// starting bracket; hitting the cap means the bracket never isolated the
/// requested index (e.g. NaN contamination).
const MAX_BISECTION_STEPS: usize = 200;

/// Number of eigenvalues strictly below `sigma`, via the sign count of the
/// LDL^T pivots of `T - sigma I`.  A vanishing pivot is nudged to a tiny
/// negative value, the standard guard that keeps the count monotone.
fn count_below(diag: &[f64], off: &[f64], sigma: f64) -> usize {
    let mut count = 0usize;
    let mut pivot = 1.0f64;
    for (i, d) in diag.iter().enumerate() {
        let e_sq = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        pivot = (d - sigma) - e_sq / pivot;
        if pivot == 0.0 {
            pivot = -f64::MIN_POSITIVE;
        }
        if pivot < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k` smallest eigenvalues of the symmetric tridiagonal matrix with the
/// given diagonal and off-diagonal, ascending.  `off.len()` must be
/// `diag.len() - 1`.
pub fn lowest_eigenvalues(
    diag: &[f64],
    off: &[f64],
    k: usize,
) -> Result<Vec<f64>, NumericsError> {
    let n = diag.len();
    assert_eq!(off.len() + 1, n, "off-diagonal length must be n - 1");
    assert!(k <= n, "cannot request more eigenvalues than the dimension");
    if diag.iter().chain(off).any(|v| !v.is_finite()) {
        return Err(NumericsError::BisectionFailure(0));
    }

    // Gershgorin bounds, widened by a few ulps so the outer eigenvalues are
    // strictly inside the bracket.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut radius = 0.0;
        if i > 0 {
            radius += off[i - 1].abs();
        }
        if i + 1 < n {
            radius += off[i].abs();
        }
        lo = lo.min(diag[i] - radius);
        hi = hi.max(diag[i] + radius);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return Err(NumericsError::BisectionFailure(0));
    }
    let pad = 1e-12 * (hi - lo).max(1.0) + f64::MIN_POSITIVE;
    lo -= pad;
    hi += pad;

    let mut out = Vec::with_capacity(k);
    // The lower bracket end can only move up as the index increases.
    let mut floor = lo;
    for j in 0..k {
        let (mut a, mut b) = (floor, hi);
        let mut steps = 0usize;
        while b - a > 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(1.0) {
            if steps >= MAX_BISECTION_STEPS {
                return Err(NumericsError::BisectionFailure(j));
            }
            steps += 1;
            let mid = 0.5 * (a + b);
            if count_below(diag, off, mid) > j {
                b = mid;
            } else {
                a = mid;
            }
        }
        floor = a;
        out.push(0.5 * (a + b));
    }
    Ok(out)
}
