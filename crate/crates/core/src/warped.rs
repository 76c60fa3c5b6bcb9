//! Scalar curvature of warped torus extensions `g + Σ φᵢ² dtᵢ²`.
//!
//! All fields are sampled on the nodes of a [`Stencil`] and evaluated only on
//! its [`eval_range`](Stencil::eval_range), at distance `2h` or more from any
//! Dirichlet endpoint. `Δφ/φ` uses the same finite-volume Laplacian as the
//! eigensolver, so a discrete eigenfunction gives an exactly constant
//! curvature; gradients are central differences of `log φ`.

use alloc::format;
use alloc::vec::Vec;
use core::ops::Range;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{invalid, Result};
use crate::spectral::Stencil;

/// Smallest grid accepted by the warped-curvature routines.
pub const MIN_WARP_GRID: usize = 64;

/// A function sampled on the evaluation nodes of a stencil.
#[derive(Debug, Clone, PartialEq)]
pub struct NodalField {
    pub indices: Range<usize>,
    pub nodes: Vec<f64>,
    pub values: Vec<f64>,
}

impl NodalField {
    fn from_fn(st: &Stencil, mut f: impl FnMut(usize) -> f64) -> Self {
        let indices = st.eval_range();
        Self {
            nodes: st.nodes()[indices.clone()].to_vec(),
            values: indices.clone().map(&mut f).collect(),
            indices,
        }
    }

    pub fn min(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// `(max - min) / |mean|`.
    pub fn relative_spread(&self) -> f64 {
        let mean = self.values.iter().sum::<f64>() / self.values.len() as f64;
        (self.max() - self.min()) / mean.abs()
    }
}

/// Samples `f` at every node of the stencil.
pub fn sample(st: &Stencil, f: impl Fn(f64) -> f64) -> Vec<f64> {
    st.nodes().iter().map(|&x| f(x)).collect()
}

/// `N ≥ 1` positive warping functions on a common grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WarpingFamily {
    stencil: Stencil,
    phis: Vec<Vec<f64>>,
}

impl WarpingFamily {
    pub fn new(stencil: Stencil, phis: Vec<Vec<f64>>) -> Result<Self> {
        if phis.is_empty() {
            return Err(invalid("a warping family needs at least one function"));
        }
        if stencil.len() < MIN_WARP_GRID {
            return Err(invalid(format!(
                "warped curvature needs a grid of at least {MIN_WARP_GRID} nodes"
            )));
        }
        for (i, phi) in phis.iter().enumerate() {
            check_samples(&stencil, phi, &format!("phi_{}", i + 1))?;
        }
        Ok(Self { stencil, phis })
    }

    pub fn stencil(&self) -> &Stencil {
        &self.stencil
    }

    pub fn phis(&self) -> &[Vec<f64>] {
        &self.phis
    }

    pub fn count(&self) -> usize {
        self.phis.len()
    }
}

fn check_samples(st: &Stencil, f: &[f64], name: &str) -> Result<()> {
    if f.len() != st.len() {
        return Err(invalid(format!(
            "{name} has {} samples, grid has {}",
            f.len(),
            st.len()
        )));
    }
    if let Some(k) = f.iter().position(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(invalid(format!(
            "{name} must be positive; node {k} at {} has value {}",
            st.nodes()[k],
            f[k]
        )));
    }
    Ok(())
}

fn log_gradient(st: &Stencil, f: &[f64]) -> Vec<f64> {
    let logs: Vec<f64> = f.iter().map(|v| v.ln()).collect();
    st.gradient(&logs)
}

/// `Sc(g) - 2 Σ Δφᵢ/φᵢ - 2 Σ_{i<j} ⟨∇log φᵢ, ∇log φⱼ⟩`.
pub fn warped_sc(w: &WarpingFamily) -> Result<NodalField> {
    let st = &w.stencil;
    let grads: Vec<Vec<f64>> = w.phis.iter().map(|p| log_gradient(st, p)).collect();
    Ok(NodalField::from_fn(st, |k| {
        let lap: f64 = w.phis.iter().map(|p| st.laplacian_ratio_at(p, k)).sum();
        let g_sum: f64 = grads.iter().map(|g| g[k]).sum();
        let g_sq: f64 = grads.iter().map(|g| g[k] * g[k]).sum();
        // Σ_{i<j} gᵢgⱼ = ((Σgᵢ)² - Σgᵢ²)/2
        st.sigma()[k] - 2.0 * lap - (g_sum * g_sum - g_sq)
    }))
}

/// Replaces every `φᵢ` by the geometric mean `(Π φᵢ)^{1/N}`.
pub fn geometric_mean_reduce(w: &WarpingFamily) -> Result<WarpingFamily> {
    let n = w.count();
    if n < 2 {
        return Err(invalid("geometric-mean reduction needs at least two functions"));
    }
    let mean: Vec<f64> = (0..w.stencil.len())
        .map(|k| (w.phis.iter().map(|p| p[k].ln()).sum::<f64>() / n as f64).exp())
        .collect();
    WarpingFamily::new(w.stencil.clone(), alloc::vec![mean; n])
}

/// `σ - 4 Δθ/θ`, the limit form of the warped curvature for `θ = exp Θ`.
pub fn theta_form(st: &Stencil, theta: &[f64]) -> Result<NodalField> {
    check_samples(st, theta, "theta")?;
    Ok(NodalField::from_fn(st, |k| {
        st.sigma()[k] - 4.0 * st.laplacian_ratio_at(theta, k)
    }))
}

fn psi_with_coefficient(st: &Stencil, psi: &[f64], coeff: f64) -> Result<NodalField> {
    if psi.len() != st.len() {
        return Err(invalid(format!(
            "psi has {} samples, grid has {}",
            psi.len(),
            st.len()
        )));
    }
    if psi.iter().any(|v| !v.is_finite()) {
        return Err(invalid("psi must be finite"));
    }
    let lap = st.laplacian(psi);
    let grad = st.gradient(psi);
    Ok(NodalField::from_fn(st, |k| {
        st.sigma()[k] - 2.0 * lap[k] - coeff * grad[k] * grad[k]
    }))
}

/// `σ - 2ΔΨ - (N+1)/N ‖∇Ψ‖²`, the curvature after replacing `N` warping
/// functions by their geometric mean `exp(Ψ/N)`.
pub fn psi_form(st: &Stencil, psi: &[f64], n: usize) -> Result<NodalField> {
    if n == 0 {
        return Err(invalid("psi_form needs N >= 1"));
    }
    psi_with_coefficient(st, psi, (n + 1) as f64 / n as f64)
}

/// `σ - 2ΔΨ - ‖∇Ψ‖²`, the `N → ∞` limit of [`psi_form`].
pub fn psi_form_limit(st: &Stencil, psi: &[f64]) -> Result<NodalField> {
    psi_with_coefficient(st, psi, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_interval, ModelManifold};
    use alloc::vec;

    fn interval_stencil(m: usize) -> Stencil {
        Stencil::for_manifold(&make_interval(0.0, 1.0).unwrap(), m).unwrap()
    }

    #[test]
    fn constant_warps_leave_curvature_unchanged() {
        let st = Stencil::for_manifold(&ModelManifold::hemisphere(3).unwrap(), 200).unwrap();
        let w = WarpingFamily::new(st.clone(), vec![vec![2.0; 200], vec![0.5; 200]]).unwrap();
        let sc = warped_sc(&w).unwrap();
        for v in &sc.values {
            assert!((v - 6.0).abs() < 1e-12);
        }
        let t = theta_form(&st, &vec![3.0; 200]).unwrap();
        assert!(t.values.iter().all(|v| (v - 6.0).abs() < 1e-12));
        let p = psi_form(&st, &vec![0.0; 200], 3).unwrap();
        assert!(p.values.iter().all(|v| *v == 6.0));
    }

    #[test]
    fn rejects_nonpositive_samples() {
        let st = interval_stencil(100);
        let mut phi = vec![1.0; 100];
        phi[40] = 0.0;
        assert!(WarpingFamily::new(st.clone(), vec![phi.clone()]).is_err());
        assert!(theta_form(&st, &phi).is_err());
        assert!(WarpingFamily::new(st.clone(), vec![]).is_err());
        assert!(WarpingFamily::new(interval_stencil(32), vec![vec![1.0; 32]]).is_err());
        assert!(psi_form(&st, &vec![0.0; 100], 0).is_err());
    }

    #[test]
    fn exponential_pair_reduces_to_flat() {
        let st = interval_stencil(400);
        let up = sample(&st, |x| x.exp());
        let down = sample(&st, |x| (-x).exp());
        let w = WarpingFamily::new(st.clone(), vec![up, down]).unwrap();
        let before = warped_sc(&w).unwrap();
        let reduced = geometric_mean_reduce(&w).unwrap();
        for phi in reduced.phis() {
            assert!(phi.iter().all(|v| (v - 1.0).abs() < 1e-14));
        }
        let after = warped_sc(&reduced).unwrap();
        // hand evaluation: -2(1 + 1) - 2(1)(-1) = -2 before, 0 after
        for (b, a) in before.values.iter().zip(&after.values) {
            assert!((b + 2.0).abs() < 1e-4, "{b}");
            assert!(a.abs() < 1e-8, "{a}");
            assert!(a > b);
        }
    }

    #[test]
    fn reduction_of_equal_family_is_identity() {
        let st = interval_stencil(128);
        let phi = sample(&st, |x| 1.0 + x * (1.0 - x));
        let w = WarpingFamily::new(st, vec![phi.clone(), phi.clone(), phi.clone()]).unwrap();
        let r = geometric_mean_reduce(&w).unwrap();
        for p in r.phis() {
            for (a, b) in p.iter().zip(&phi) {
                assert!((a - b).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn psi_form_is_monotone_in_n() {
        let st = interval_stencil(200);
        let psi = sample(&st, |x| (3.0 * x).sin());
        let mut prev = psi_form(&st, &psi, 1).unwrap();
        for n in 2..6 {
            let next = psi_form(&st, &psi, n).unwrap();
            for (a, b) in prev.values.iter().zip(&next.values) {
                assert!(b >= a);
            }
            prev = next;
        }
    }

    #[test]
    fn eigenfunction_warps_give_constant_curvature() {
        use crate::spectral::{discretize, first_eigenpair};
        let hemi = ModelManifold::hemisphere(2).unwrap();
        // β = 1/2: one warp by the eigenfunction gives 2λ₁
        let op = discretize(&hemi, 0.5, 400).unwrap();
        let eig = first_eigenpair(&op).unwrap();
        let w = WarpingFamily::new(op.stencil().clone(), vec![eig.eigenfunction.clone()]).unwrap();
        let sc = warped_sc(&w).unwrap();
        assert!(sc.relative_spread() < 1e-8, "{}", sc.relative_spread());
        assert!((sc.min() - 2.0 * eig.lambda1).abs() < 1e-8 * eig.lambda1);
        // β = 1/4: the θ-form at the eigenfunction gives 4λ₁
        let op = discretize(&hemi, 0.25, 400).unwrap();
        let eig = first_eigenpair(&op).unwrap();
        let t = theta_form(op.stencil(), &eig.eigenfunction).unwrap();
        assert!(t.relative_spread() < 1e-8);
        assert!((t.min() - eig.sc_stab).abs() < 1e-8 * eig.sc_stab);
    }

    #[test]
    fn psi_form_matches_equal_family() {
        let st = interval_stencil(300);
        let psi = sample(&st, |x| 0.3 * (2.0 * x).cos() + x * x);
        for n in 1..5 {
            let phi: Vec<f64> = psi.iter().map(|p| (p / n as f64).exp()).collect();
            let w = WarpingFamily::new(st.clone(), vec![phi; n]).unwrap();
            let direct = warped_sc(&w).unwrap();
            let via_psi = psi_form(&st, &psi, n).unwrap();
            for (a, b) in direct.values.iter().zip(&via_psi.values) {
                assert!((a - b).abs() < 5e-3 * (1.0 + b.abs()), "n={n}: {a} vs {b}");
            }
        }
    }
}
