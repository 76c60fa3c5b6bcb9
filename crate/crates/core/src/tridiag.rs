//! Lowest eigenpair of a real symmetric tridiagonal matrix.
//!
//! The eigenvalue comes from bisection on the Sturm count of `T - λI`
//! (the number of negative pivots of its LDLᵀ factorization). The
//! eigenvector then follows from inverse iteration with the shift placed at
//! the lower bisection bracket, where every pivot is positive.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{invalid, numerical, Result};

/// Bisection steps allowed before giving up.
pub const MAX_BISECTION_STEPS: usize = 200;

const INVERSE_ITERATIONS: usize = 3;

/// Number of eigenvalues of `T` strictly below `lambda`.
pub fn sturm_count(diag: &[f64], offdiag: &[f64], lambda: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for (i, &d) in diag.iter().enumerate() {
        let e2 = if i == 0 { 0.0 } else { offdiag[i - 1] * offdiag[i - 1] };
        q = d - lambda - if e2 == 0.0 { 0.0 } else { e2 / q };
        if q == 0.0 {
            q = -f64::MIN_POSITIVE;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Gershgorin enclosure of the spectrum.
pub fn gershgorin(diag: &[f64], offdiag: &[f64]) -> (f64, f64) {
    let m = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..m {
        let left = if i > 0 { offdiag[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < m { offdiag[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    (lo, hi)
}

/// Smallest eigenvalue as a bracket `(lo, hi)` with `count(lo) = 0`, `count(hi) ≥ 1`.
pub fn smallest_eigenvalue_bracket(diag: &[f64], offdiag: &[f64]) -> Result<(f64, f64)> {
    check_shape(diag, offdiag)?;
    let (mut lo, mut hi) = gershgorin(diag, offdiag);
    let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
    // widen so the strict-inequality counts bracket the eigenvalue
    lo -= 4.0 * f64::EPSILON * scale;
    hi += 4.0 * f64::EPSILON * scale;
    for _ in 0..MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok((lo, hi));
        }
        if sturm_count(diag, offdiag, mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(numerical(
        "bisection did not converge within the iteration cap",
        hi - lo,
    ))
}

/// Lowest eigenvalue and a unit eigenvector with nonnegative sum.
pub fn lowest_eigenpair(diag: &[f64], offdiag: &[f64]) -> Result<(f64, Vec<f64>)> {
    let (lo, hi) = smallest_eigenvalue_bracket(diag, offdiag)?;
    let lambda = 0.5 * (lo + hi);
    let m = diag.len();
    let mut x = vec![1.0 / (m as f64).sqrt(); m];
    for _ in 0..INVERSE_ITERATIONS {
        x = solve_shifted(diag, offdiag, lo, &x);
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(numerical("inverse iteration produced a degenerate vector", norm));
        }
        x.iter_mut().for_each(|v| *v /= norm);
    }
    if x.iter().sum::<f64>() < 0.0 {
        x.iter_mut().for_each(|v| *v = -*v);
    }
    let residual = residual_norm(diag, offdiag, lambda, &x);
    let (glo, ghi) = gershgorin(diag, offdiag);
    let scale = glo.abs().max(ghi.abs()).max(1.0);
    if residual > 1e-6 * scale {
        return Err(numerical("inverse iteration residual too large", residual));
    }
    Ok((lambda, x))
}

/// `‖T x - λ x‖₂`.
pub fn residual_norm(diag: &[f64], offdiag: &[f64], lambda: f64, x: &[f64]) -> f64 {
    let m = diag.len();
    (0..m)
        .map(|i| {
            let mut y = (diag[i] - lambda) * x[i];
            if i > 0 {
                y += offdiag[i - 1] * x[i - 1];
            }
            if i + 1 < m {
                y += offdiag[i] * x[i + 1];
            }
            y * y
        })
        .sum::<f64>()
        .sqrt()
}

/// Solves `(T - s I) y = b` by the Thomas recurrence; the pivots are the Sturm pivots.
fn solve_shifted(diag: &[f64], offdiag: &[f64], shift: f64, b: &[f64]) -> Vec<f64> {
    let m = diag.len();
    let mut pivots = vec![0.0; m];
    let mut y = vec![0.0; m];
    for i in 0..m {
        let mut q = diag[i] - shift;
        let mut r = b[i];
        if i > 0 {
            let l = offdiag[i - 1] / pivots[i - 1];
            q -= l * offdiag[i - 1];
            r -= l * y[i - 1];
        }
        if q.abs() < f64::MIN_POSITIVE {
            q = f64::MIN_POSITIVE;
        }
        pivots[i] = q;
        y[i] = r;
    }
    for i in (0..m).rev() {
        let mut r = y[i];
        if i + 1 < m {
            r -= offdiag[i] * y[i + 1];
        }
        y[i] = r / pivots[i];
    }
    y
}

fn check_shape(diag: &[f64], offdiag: &[f64]) -> Result<()> {
    if diag.is_empty() {
        return Err(invalid("empty matrix"));
    }
    if offdiag.len() + 1 != diag.len() {
        return Err(invalid("off-diagonal must be one shorter than the diagonal"));
    }
    if diag.iter().chain(offdiag).any(|v| !v.is_finite()) {
        return Err(invalid("matrix entries must be finite"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn laplacian(m: usize) -> (Vec<f64>, Vec<f64>) {
        (vec![2.0; m], vec![-1.0; m - 1])
    }

    #[test]
    fn counts_match_known_spectrum() {
        // eigenvalues of tridiag(-1, 2, -1) are 2 - 2cos(kπ/(m+1))
        let m = 10;
        let (d, e) = laplacian(m);
        for k in 1..=m {
            let ev = 2.0 - 2.0 * (k as f64 * PI / (m + 1) as f64).cos();
            assert_eq!(sturm_count(&d, &e, ev - 1e-9), k - 1);
            assert_eq!(sturm_count(&d, &e, ev + 1e-9), k);
        }
    }

    #[test]
    fn lowest_pair_of_discrete_laplacian() {
        let m = 50;
        let (d, e) = laplacian(m);
        let (lambda, v) = lowest_eigenpair(&d, &e).unwrap();
        let exact = 2.0 - 2.0 * (PI / (m + 1) as f64).cos();
        assert!((lambda - exact).abs() < 1e-14);
        let norm = (2.0 / (m + 1) as f64).sqrt();
        for (i, vi) in v.iter().enumerate() {
            let s = norm * ((i + 1) as f64 * PI / (m + 1) as f64).sin();
            assert!((vi - s).abs() < 1e-12);
        }
    }

    #[test]
    fn single_entry() {
        let (lambda, v) = lowest_eigenpair(&[3.5], &[]).unwrap();
        assert!((lambda - 3.5).abs() < 1e-14);
        assert_eq!(v, vec![1.0]);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(lowest_eigenpair(&[], &[]).is_err());
        assert!(lowest_eigenpair(&[1.0, 2.0], &[]).is_err());
        assert!(lowest_eigenpair(&[1.0, f64::NAN], &[0.5]).is_err());
    }
}
