//! Bessel functions of the first kind and their first positive zeros.
//!
//! `J_ν(x)` is summed from its power series below `x = 12` and obtained
//! from Miller's backward recurrence above, normalized with the
//! Neumann series `(x/2)^μ = Σ_k (μ+2k) Γ(μ+k)/k! J_{μ+2k}(x)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{invalid, numerical, Result};

/// Above this argument the power series loses more than 1e-12 to cancellation.
const SERIES_LIMIT: f64 = 12.0;
const SCAN_STEP: f64 = 0.1;
const MAX_SCAN_STEPS: usize = 100_000;

/// First positive zero `j_ν` of `J_ν`, with the two-sided enclosure when `ν > 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselZero {
    pub nu: f64,
    pub j: f64,
    pub enclosure: Option<(f64, f64)>,
}

fn check_order(nu: f64) -> Result<()> {
    if !(nu >= -0.5) || !nu.is_finite() {
        return Err(invalid(format!("Bessel order must be >= -1/2, got {nu}")));
    }
    Ok(())
}

/// `J_ν(x)` for `ν ≥ -1/2`, `x ≥ 0`.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    check_order(nu)?;
    if !(x >= 0.0) || !x.is_finite() {
        return Err(invalid(format!("Bessel argument must be >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            f64::INFINITY
        });
    }
    if x < SERIES_LIMIT {
        Ok(series(nu, x))
    } else {
        Ok(miller(nu, x))
    }
}

fn series(nu: f64, x: f64) -> f64 {
    let ln_prefactor = nu * (0.5 * x).ln() - libm::lgamma(nu + 1.0);
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (k + nu));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() && k * k > -q {
            break;
        }
        if k > 500.0 {
            break;
        }
    }
    // Γ(ν+1) > 0 for ν ≥ -1/2, so lgamma alone carries the magnitude
    sum * ln_prefactor.exp()
}

fn miller(nu: f64, x: f64) -> f64 {
    let base = nu.floor();
    let mu = nu - base;
    // index of J_ν in the ladder J_{μ+k}, k ≥ -1
    let target = base as i64;
    let top = (x.max(nu) + 20.0 + 10.0 * x.cbrt()).ceil() as usize;
    let top = top + (top & 1);
    // f[k + 1] holds the unnormalized J_{μ+k}
    let mut f = vec![0.0; top + 3];
    f[top + 1] = 1e-30;
    for k in (0..=top).rev() {
        // J_{μ+k-1} = 2(μ+k)/x J_{μ+k} - J_{μ+k+1}
        f[k] = 2.0 * (mu + k as f64) / x * f[k + 1] - f[k + 2];
        if f[k].abs() > 1e250 {
            let s = 1.0 / f[k].abs();
            f[k..].iter_mut().for_each(|v| *v *= s);
        }
    }
    let at = |k: usize| f[k + 1];
    let mut norm = libm::tgamma(mu + 1.0) * at(0);
    let mut c = libm::tgamma(mu + 1.0);
    let mut k = 1;
    while 2 * k <= top {
        norm += (mu + 2.0 * k as f64) * c * at(2 * k);
        c *= (mu + k as f64) / (k + 1) as f64;
        k += 1;
    }
    let scale = (mu * (0.5 * x).ln()).exp() / norm;
    f[(target + 1) as usize] * scale
}

/// `J_ν′(x) = (ν/x) J_ν(x) - J_{ν+1}(x)`.
fn bessel_j_prime(nu: f64, x: f64) -> Result<f64> {
    Ok(nu / x * bessel_j(nu, x)? - bessel_j(nu + 1.0, x)?)
}

/// First positive zero of `J_ν`: scan for a sign change, bisect, then polish with Newton.
pub fn first_zero(nu: f64) -> Result<BesselZero> {
    check_order(nu)?;
    let mut lo = nu.max(0.5);
    let mut f_lo = bessel_j(nu, lo)?;
    let mut hi = lo;
    let mut found = false;
    for _ in 0..MAX_SCAN_STEPS {
        hi = lo + SCAN_STEP;
        let f_hi = bessel_j(nu, hi)?;
        if f_hi == 0.0 || f_hi.signum() != f_lo.signum() {
            found = true;
            break;
        }
        lo = hi;
        f_lo = f_hi;
    }
    if !found {
        return Err(numerical(
            format!("no sign change of J_{nu} found by scanning"),
            f_lo.abs(),
        ));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo < 1e-10 {
            break;
        }
        let f_mid = bessel_j(nu, mid)?;
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let mut j = 0.5 * (lo + hi);
    for _ in 0..4 {
        let step = bessel_j(nu, j)? / bessel_j_prime(nu, j)?;
        let next = j - step;
        if !(next > lo - 1e-9 && next < hi + 1e-9) {
            break;
        }
        j = next;
        if step.abs() < 1e-16 * j {
            break;
        }
    }
    let enclosure = if nu > 0.5 { Some(qw_enclosure(nu)?) } else { None };
    Ok(BesselZero { nu, j, enclosure })
}

/// Airy-type constant `a = (9π/8)^{2/3} (1 + ε)` with `ε` at its upper bound
/// `0.13 (8/(2.847π))²`.
pub fn qw_constant() -> f64 {
    let eps = 0.13 * (8.0 / (2.847 * PI)).powi(2);
    (9.0 * PI / 8.0).powf(2.0 / 3.0) * (1.0 + eps)
}

/// The enclosure `ν + aν^{1/3}/2^{1/3} < j_ν < … + (3/20) 2^{2/3} a²/ν^{1/2}`
/// evaluated for an explicit constant `a`.
pub fn qw_bounds(nu: f64, a: f64) -> (f64, f64) {
    let lower = nu + a * nu.cbrt() / 2.0f64.cbrt();
    let upper = lower + 0.15 * 2.0f64.powf(2.0 / 3.0) * a * a / nu.sqrt();
    (lower, upper)
}

/// Enclosure of `j_ν` for `ν > 1/2`, using [`qw_constant`].
pub fn qw_enclosure(nu: f64) -> Result<(f64, f64)> {
    if !(nu > 0.5) || !nu.is_finite() {
        return Err(invalid(format!("the enclosure needs nu > 1/2, got {nu}")));
    }
    Ok(qw_bounds(nu, qw_constant()))
}

/// `4 j²_{n/2-1} / r²`, the stabilized curvature of the flat `r`-ball in `ℝⁿ`.
pub fn flat_ball_sc(n: usize, r: f64) -> Result<f64> {
    if n < 2 {
        return Err(invalid(format!("flat balls need n >= 2, got {n}")));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(invalid(format!("radius must be positive, got {r}")));
    }
    let j = first_zero(n as f64 / 2.0 - 1.0)?.j;
    Ok(4.0 * j * j / (r * r))
}

/// First zeros for a list of orders.
pub fn first_zeros(orders: &[f64]) -> Result<Vec<BesselZero>> {
    orders.iter().map(|&nu| first_zero(nu)).collect()
}
