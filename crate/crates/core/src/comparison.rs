//! Ricci/mean-curvature comparison with space-form balls, and the
//! hyperbolic-ball diagnostics.
//!
//! A radial ball `X` with `Ric ≥ (n-1)κ` and boundary mean curvature `≥ μ`
//! has `Sc⋊(X) ≥ Sc⋊(B^n_{κ,μ})`, where `B^n_{κ,μ}` is the `κ` space-form
//! ball whose boundary has mean curvature exactly `μ`.

use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{invalid, Result};
use crate::geometry::{
    make_space_form_ball, radius_from_mean_curvature, ModelManifold, RadialProfile, Warp,
};
use crate::spectral::{
    discretize, first_eigenpair, lambda1_beta, sc_stab_with, SolveOptions, SpectralResult, Stencil,
};

/// Slack allowed in the pointwise admissibility checks.
const CURVATURE_SLACK: f64 = 1e-9;

/// A radial manifold together with the comparison model it is tested against.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonCase {
    profile: RadialProfile,
    kappa: f64,
    mu: f64,
    model: ModelManifold,
}

impl ComparisonCase {
    /// Checks boundary mean curvature `≥ mu` and both Ricci eigenvalues
    /// `≥ (n-1)kappa` on the nodes of an `m`-point grid.
    pub fn new(profile: RadialProfile, kappa: f64, mu: f64, m: usize) -> Result<Self> {
        let n = profile.dim();
        let model = make_space_form_ball(n, kappa, radius_from_mean_curvature(n, kappa, mu)?)?;
        let h_bdry = profile.boundary_mean_curvature();
        if h_bdry < mu - CURVATURE_SLACK * mu.abs().max(1.0) {
            return Err(invalid(format!(
                "boundary mean curvature {h_bdry} at radius {} is below mu = {mu}",
                profile.r_max()
            )));
        }
        let bound = (n - 1) as f64 * kappa;
        let slack = CURVATURE_SLACK * bound.abs().max(1.0);
        let st = Stencil::for_manifold(&ModelManifold::from(profile.clone()), m)?;
        let checks = st.nodes().iter().cloned().chain([profile.r_max()]);
        for (k, d) in checks.enumerate() {
            let (radial, tangential) = profile.ricci(d);
            if radial < bound - slack {
                return Err(invalid(format!(
                    "radial Ricci {radial} below (n-1)kappa = {bound} at node {k} (radius {d})"
                )));
            }
            if tangential < bound - slack {
                return Err(invalid(format!(
                    "tangential Ricci {tangential} below (n-1)kappa = {bound} at node {k} (radius {d})"
                )));
            }
        }
        Ok(Self {
            profile,
            kappa,
            mu,
            model,
        })
    }

    pub fn profile(&self) -> &RadialProfile {
        &self.profile
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn model(&self) -> &ModelManifold {
        &self.model
    }

    pub fn manifold(&self) -> ModelManifold {
        ModelManifold::from(self.profile.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonOutcome {
    pub sc_x: f64,
    pub sc_model: f64,
    /// Twice the larger coarse/fine discrepancy of the two solves.
    pub tol: f64,
    pub holds: bool,
}

impl ComparisonOutcome {
    pub fn margin(&self) -> f64 {
        self.sc_x - self.sc_model
    }
}

/// Absolute change of `Sc⋊` between the two grids of a refined solve.
fn sc_discrepancy(r: &SpectralResult) -> f64 {
    // richardson - fine = (fine - coarse)/3
    r.richardson_estimate
        .map(|e| 4.0 * 3.0 * (e - r.lambda1).abs())
        .unwrap_or(0.0)
}

/// `Sc⋊(X)` and `Sc⋊(B^n_{κ,μ})` on grid `m`, and whether the first is at
/// least the second up to the convergence tolerance.
pub fn compare_sc_stab(c: &ComparisonCase, m: usize) -> Result<ComparisonOutcome> {
    let opts = SolveOptions::with_grid(m);
    let x = sc_stab_with(&c.manifold(), &opts)?;
    let model = sc_stab_with(&c.model, &opts)?;
    let tol = 2.0 * sc_discrepancy(&x).max(sc_discrepancy(&model));
    Ok(ComparisonOutcome {
        sc_x: x.sc_stab,
        sc_model: model.sc_stab,
        tol,
        holds: x.sc_stab >= model.sc_stab - tol,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransplantReport {
    /// `λ₁(-Δ + σ/4)` of the model on its own grid.
    pub model_lambda: f64,
    /// `(-Δv + σv/4)/v` of the transplant `v` at the nodes of `X`.
    pub quotients: Vec<f64>,
    pub min_margin: f64,
    pub worst_node: usize,
    pub holds: bool,
}

/// Transplants the model eigenfunction onto `X` by boundary distance.
///
/// With `v(ρ) = u(R_B - R_X + ρ)` the quotient at `ρ` is
/// `λ_B + (σ_X - σ_B)/4 + (H_B(s) - H_X(ρ)) u′(s)/u(s)`, and the comparison
/// chain asks for it to be at least `λ_B` at every node; a lower bound of
/// the quotient bounds `λ₁(X)` from below.
pub fn transplant_check(c: &ComparisonCase, m: usize) -> Result<TransplantReport> {
    let r_x = c.profile.r_max();
    let model_profile = c.model.profile().expect("comparison models are radial");
    let r_b = model_profile.r_max();
    if r_x > r_b * (1.0 + 1e-9) {
        return Err(invalid(format!(
            "radius {r_x} of X exceeds the model radius {r_b}"
        )));
    }
    let op = discretize(&c.model, 0.25, m)?;
    let eig = first_eigenpair(&op)?;
    let st = op.stencil();
    let grad = st.gradient(&eig.eigenfunction);
    let log_deriv: Vec<f64> = grad
        .iter()
        .zip(&eig.eigenfunction)
        .map(|(g, u)| g / u)
        .collect();
    let sigma_b = st.sigma()[0];
    let nodes = st.nodes();
    let range = st.eval_range();
    let last = range.end - 1;
    let h = st.h();

    let x_stencil = Stencil::for_manifold(&c.manifold(), m)?;
    let mut quotients = Vec::with_capacity(x_stencil.len());
    let mut best = (f64::INFINITY, 0);
    for (i, &rho) in x_stencil.nodes()[x_stencil.eval_range()].iter().enumerate() {
        let s = (r_b - r_x + rho).clamp(nodes[0], nodes[last]);
        // linear interpolation of u′/u between model nodes
        let t = s / h - 0.5;
        let k = (t.floor() as usize).min(last.saturating_sub(1));
        let frac = t - k as f64;
        let g = log_deriv[k] * (1.0 - frac) + log_deriv[k + 1] * frac;
        let h_model = model_profile.mean_curvature(s);
        let h_x = c.profile.mean_curvature(rho);
        let q = eig.lambda1 + (c.profile.scalar_curvature(rho) - sigma_b) / 4.0 + (h_model - h_x) * g;
        let margin = q - eig.lambda1;
        if margin < best.0 {
            best = (margin, i);
        }
        quotients.push(q);
    }
    let slack = 1e-9 * eig.lambda1.abs().max(1.0);
    Ok(TransplantReport {
        model_lambda: eig.lambda1,
        quotients,
        min_margin: best.0,
        worst_node: best.1,
        holds: best.0 >= -slack,
    })
}

/// `c(r) = 4λ₁(Δ on B^n₋₁(r))/(n-1)² - 1/r²`.
pub fn hyperbolic_c(n: usize, r: f64, m: usize) -> Result<f64> {
    let ball = ModelManifold::hyperbolic_ball(n, r)?;
    let lambda = lambda1_beta(&ball, 0.0, m)?.lambda1;
    let n1 = (n - 1) as f64;
    Ok(4.0 * lambda / (n1 * n1) - 1.0 / (r * r))
}

/// `Sc⋊(B^n₋₁(r)) = 4λ₁(Δ) - n(n-1)`.
pub fn hyperbolic_sc(n: usize, r: f64, m: usize) -> Result<f64> {
    let ball = ModelManifold::hyperbolic_ball(n, r)?;
    let lambda = lambda1_beta(&ball, 0.0, m)?.lambda1;
    Ok(4.0 * lambda - (n * (n - 1)) as f64)
}

/// Mean-curvature bound used by [`catalog`] for each `κ`: the unit ball for
/// `κ = 0`, the hemisphere for `κ > 0`, and `H = 3(n-1)/2` for `κ < 0`.
pub fn catalog_mu(n: usize, kappa: f64) -> f64 {
    let n1 = (n - 1) as f64;
    if kappa > 0.0 {
        0.0
    } else if kappa < 0.0 {
        1.5 * n1 * (-kappa).sqrt()
    } else {
        n1
    }
}

/// Deterministic list of `count` admissible radial balls for the bound
/// `(κ, catalog_mu(n, κ))`: the model itself, smaller balls of space forms
/// with curvature `κ′ ≥ κ`, and odd-polynomial warps curving more than the
/// model near the center.
pub fn catalog(n: usize, kappa: f64, count: usize, m: usize) -> Result<Vec<ComparisonCase>> {
    let mu = catalog_mu(n, kappa);
    let mut out = Vec::with_capacity(count);
    let push = |p: RadialProfile, out: &mut Vec<ComparisonCase>| {
        if out.len() < count {
            if let Ok(c) = ComparisonCase::new(p, kappa, mu, m) {
                out.push(c);
            }
        }
    };
    for dk in [0.0, 0.5, 1.0, 2.0] {
        let k2 = kappa + dk;
        let r_max = match radius_from_mean_curvature(n, k2, mu) {
            Ok(r) => r,
            Err(_) => continue,
        };
        for frac in [1.0, 0.9, 0.7] {
            push(RadialProfile::new(n, Warp::SpaceForm { kappa: k2 }, frac * r_max)?, &mut out);
        }
    }
    // Taylor coefficients of the model warp are -κ/6 and κ²/120
    let r_model = radius_from_mean_curvature(n, kappa, mu)?;
    'search: for a in 1..8 {
        for b in 0..4 {
            let c3 = -kappa / 6.0 - 0.04 * a as f64;
            let c5 = kappa * kappa / 120.0 - 0.01 * b as f64;
            for frac in [0.95, 0.8, 0.6] {
                if out.len() >= count {
                    break 'search;
                }
                let warp = Warp::OddPolynomial {
                    coeffs: alloc::vec![c3, c5],
                };
                if let Ok(p) = RadialProfile::new(n, warp, frac * r_model) {
                    push(p, &mut out);
                }
            }
        }
    }
    if out.len() < count {
        return Err(invalid(format!(
            "only {} admissible profiles found for kappa = {kappa}",
            out.len()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_against_itself() {
        let p = RadialProfile::new(3, Warp::SpaceForm { kappa: 0.0 }, 1.0).unwrap();
        let c = ComparisonCase::new(p, 0.0, 2.0, 400).unwrap();
        let out = compare_sc_stab(&c, 400).unwrap();
        assert_eq!(out.sc_x, out.sc_model);
        assert!(out.holds);
        let t = transplant_check(&c, 400).unwrap();
        assert!(t.holds);
        assert!(t.min_margin.abs() < 1e-12);
    }

    #[test]
    fn smaller_euclidean_ball() {
        let p = RadialProfile::new(3, Warp::SpaceForm { kappa: 0.0 }, 0.8).unwrap();
        let c = ComparisonCase::new(p, 0.0, 2.0, 400).unwrap();
        let out = compare_sc_stab(&c, 400).unwrap();
        assert!(out.sc_x > out.sc_model + 1.0);
        assert!(transplant_check(&c, 400).unwrap().holds);
    }

    #[test]
    fn cap_inside_hemisphere_model() {
        let p = RadialProfile::new(2, Warp::SpaceForm { kappa: 1.0 }, 1.2).unwrap();
        let c = ComparisonCase::new(p, 1.0, 0.0, 400).unwrap();
        let out = compare_sc_stab(&c, 400).unwrap();
        assert!((out.sc_model - 10.0).abs() < 0.01);
        assert!(out.sc_x >= 10.0);
    }

    #[test]
    fn violations_are_errors() {
        // too large: boundary mean curvature 2/1.2 < 2
        let p = RadialProfile::new(3, Warp::SpaceForm { kappa: 0.0 }, 1.2).unwrap();
        assert!(ComparisonCase::new(p, 0.0, 2.0, 100).is_err());
        // negative curvature against a κ = 0 bound
        let p = RadialProfile::new(3, Warp::OddPolynomial { coeffs: alloc::vec![0.1] }, 0.5).unwrap();
        let err = ComparisonCase::new(p, 0.0, 2.0, 100).unwrap_err();
        assert!(format!("{err}").contains("node"));
    }

    #[test]
    fn catalogs_fill_up() {
        for kappa in [-1.0, 0.0, 1.0] {
            assert_eq!(catalog(3, kappa, 20, 200).unwrap().len(), 20);
        }
    }
}
