//! Dirichlet spectrum of `-Δ + β·σ` on intervals and radial balls.
//!
//! Intervals use the uniform grid `x_k = a + k h`, `k = 1..=m`, with zero
//! values at both endpoints. Balls use the staggered grid `ρ_k = (k - ½) h`
//! with `h = R/(m + ½)`: the center sits half a cell before the first node,
//! where the flux weight `A(0) = 0` makes it a no-flux endpoint, and the
//! outer node `ρ_{m+1} = R` carries the Dirichlet condition.
//!
//! The finite-volume operator
//!
//! ```text
//! (-Δ_h u)_k = w⁺_k (u_k - u_{k+1}) + w⁻_k (u_k - u_{k-1}),
//! w^±_k = A(ρ_k ± h/2) / (A(ρ_k) h²)
//! ```
//!
//! is self-adjoint for the weights `A(ρ_k) h`; conjugating by their square
//! roots gives a symmetric tridiagonal matrix with off-diagonal entries
//! `-√(w⁺_k w⁻_{k+1}) < 0`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{invalid, numerical, Error, Result};
use crate::geometry::ModelManifold;
use crate::tridiag;

pub const DEFAULT_GRID: usize = 4000;
pub const DEFAULT_TOL: f64 = 1e-3;
pub const MIN_GRID: usize = 16;

/// Grid size and convergence tolerance for refined solves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub grid: usize,
    /// Target relative accuracy; grids `m` and `2m` must agree to `10 × tol`.
    pub tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            grid: DEFAULT_GRID,
            tol: DEFAULT_TOL,
        }
    }
}

impl SolveOptions {
    pub fn with_grid(grid: usize) -> Self {
        Self {
            grid,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCondition {
    DirichletBoth,
    DirichletOuterRegularCenter,
}

/// Grid, flux weights and scalar curvature samples of a discretized base.
#[derive(Debug, Clone, PartialEq)]
pub struct Stencil {
    nodes: Vec<f64>,
    h: f64,
    bc: BoundaryCondition,
    w_plus: Vec<f64>,
    w_minus: Vec<f64>,
    sigma: Vec<f64>,
    ln_mass: Vec<f64>,
    /// Length scale of the domain, for relative tolerances.
    extent: f64,
}

impl Stencil {
    pub fn for_manifold(man: &ModelManifold, m: usize) -> Result<Self> {
        if m < MIN_GRID {
            return Err(invalid(format!("grid size must be >= {MIN_GRID}, got {m}")));
        }
        match man {
            ModelManifold::Interval(iv) => {
                let h = iv.length() / (m + 1) as f64;
                let w = 1.0 / (h * h);
                Ok(Self {
                    nodes: (1..=m).map(|k| iv.a() + k as f64 * h).collect(),
                    h,
                    bc: BoundaryCondition::DirichletBoth,
                    w_plus: vec![w; m],
                    w_minus: vec![w; m],
                    sigma: vec![0.0; m],
                    ln_mass: vec![h.ln(); m],
                    extent: iv.length(),
                })
            }
            ModelManifold::Box(_) | ModelManifold::Product(_) => Err(Error::InvalidKind(format!(
                "{:?} is a product; solve its factors and combine with eigen_product",
                man.kind()
            ))),
            _ => {
                let p = man.profile().expect("radial kinds carry a profile");
                let r = p.r_max();
                let h = r / (m as f64 + 0.5);
                let h2 = h * h;
                let nodes: Vec<f64> = (1..=m).map(|k| (k as f64 - 0.5) * h).collect();
                let ln_a: Vec<f64> = nodes.iter().map(|&d| p.ln_density(d)).collect();
                let mut w_plus = Vec::with_capacity(m);
                let mut w_minus = Vec::with_capacity(m);
                for (k, &d) in nodes.iter().enumerate() {
                    w_plus.push((p.ln_density(d + 0.5 * h) - ln_a[k]).exp() / h2);
                    if k == 0 {
                        w_minus.push(0.0);
                    } else {
                        w_minus.push((p.ln_density(d - 0.5 * h) - ln_a[k]).exp() / h2);
                    }
                }
                Ok(Self {
                    sigma: nodes.iter().map(|&d| p.scalar_curvature(d)).collect(),
                    ln_mass: ln_a.iter().map(|l| l + h.ln()).collect(),
                    nodes,
                    h,
                    bc: BoundaryCondition::DirichletOuterRegularCenter,
                    w_plus,
                    w_minus,
                    extent: r,
                })
            }
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn bc(&self) -> BoundaryCondition {
        self.bc
    }

    pub fn sigma(&self) -> &[f64] {
        &self.sigma
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    /// Node indices at distance at least `2h` from every Dirichlet endpoint.
    pub fn eval_range(&self) -> Range<usize> {
        let m = self.len();
        match self.bc {
            BoundaryCondition::DirichletBoth => 1..m - 1,
            BoundaryCondition::DirichletOuterRegularCenter => 0..m - 1,
        }
    }

    /// Discrete Laplacian `Δ_h u` with zero Dirichlet data.
    pub fn laplacian(&self, u: &[f64]) -> Vec<f64> {
        let m = self.len();
        (0..m)
            .map(|k| {
                let up = if k + 1 < m { u[k + 1] } else { 0.0 };
                let down = if k > 0 { u[k - 1] } else { 0.0 };
                self.w_plus[k] * (up - u[k]) + self.w_minus[k] * (down - u[k])
            })
            .collect()
    }

    /// `Δ_h u / u` at a single node, without Dirichlet padding beyond the grid.
    pub fn laplacian_ratio_at(&self, u: &[f64], k: usize) -> f64 {
        let m = self.len();
        let up = if k + 1 < m { u[k + 1] } else { 0.0 };
        let down = if k > 0 { u[k - 1] } else { 0.0 };
        (self.w_plus[k] * (up - u[k]) + self.w_minus[k] * (down - u[k])) / u[k]
    }

    /// Radial derivative: central differences inside, mirror symmetry at a
    /// regular center, one-sided second order at nodes next to a Dirichlet end.
    pub fn gradient(&self, u: &[f64]) -> Vec<f64> {
        let m = self.len();
        let h2 = 2.0 * self.h;
        (0..m)
            .map(|k| {
                if k == 0 {
                    match self.bc {
                        BoundaryCondition::DirichletOuterRegularCenter => (u[1] - u[0]) / h2,
                        BoundaryCondition::DirichletBoth => (-3.0 * u[0] + 4.0 * u[1] - u[2]) / h2,
                    }
                } else if k + 1 == m {
                    (3.0 * u[k] - 4.0 * u[k - 1] + u[k - 2]) / h2
                } else {
                    (u[k + 1] - u[k - 1]) / h2
                }
            })
            .collect()
    }

    fn symmetric_matrix(&self, beta: f64) -> (Vec<f64>, Vec<f64>) {
        let m = self.len();
        let diag = (0..m)
            .map(|k| self.w_plus[k] + self.w_minus[k] + beta * self.sigma[k])
            .collect();
        let off = (0..m - 1)
            .map(|k| -(self.w_plus[k] * self.w_minus[k + 1]).sqrt())
            .collect();
        (diag, off)
    }

    /// Maps a symmetric-form vector back to nodal values, scaled to maximum 1.
    fn nodal_values(&self, v: &[f64]) -> Vec<f64> {
        let logs: Vec<f64> = v
            .iter()
            .zip(&self.ln_mass)
            .map(|(x, lm)| x.abs().ln() - 0.5 * lm)
            .collect();
        let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        logs.iter()
            .zip(v)
            .map(|(l, x)| (l - top).exp().copysign(*x))
            .collect()
    }
}

/// Symmetric tridiagonal discretization of `-Δ + β·σ`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteOperator {
    stencil: Stencil,
    beta: f64,
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl DiscreteOperator {
    pub fn stencil(&self) -> &Stencil {
        &self.stencil
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    pub fn bc(&self) -> BoundaryCondition {
        self.stencil.bc
    }

    pub fn grid_size(&self) -> usize {
        self.diag.len()
    }
}

/// First eigenpair, possibly refined and combined over product factors.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    pub beta: f64,
    pub lambda1: f64,
    /// Nodal values of the first eigenfunction (max 1); empty for products.
    pub eigenfunction: Vec<f64>,
    pub grid_size: usize,
    /// `(4λ(2m) - λ(m))/3` when two grids were solved.
    pub richardson_estimate: Option<f64>,
    /// `|λ(m) - λ(2m)| / max(|λ(2m)|, 1/L²)` when two grids were solved.
    pub certificate: Option<f64>,
    /// `4·λ₁`; the stabilized scalar curvature when `beta = 1/4`.
    pub sc_stab: f64,
    pub factors: Vec<SpectralResult>,
}

impl SpectralResult {
    fn single(beta: f64, lambda1: f64, eigenfunction: Vec<f64>, grid_size: usize) -> Self {
        Self {
            beta,
            lambda1,
            eigenfunction,
            grid_size,
            richardson_estimate: None,
            certificate: None,
            sc_stab: 4.0 * lambda1,
            factors: Vec::new(),
        }
    }
}

pub fn discretize(man: &ModelManifold, beta: f64, m: usize) -> Result<DiscreteOperator> {
    if !beta.is_finite() {
        return Err(invalid("beta must be finite"));
    }
    let stencil = Stencil::for_manifold(man, m)?;
    let (diag, offdiag) = stencil.symmetric_matrix(beta);
    Ok(DiscreteOperator {
        stencil,
        beta,
        diag,
        offdiag,
    })
}

/// Lowest eigenvalue and positive eigenfunction of one discretization.
pub fn first_eigenpair(op: &DiscreteOperator) -> Result<SpectralResult> {
    let (lambda, v) = tridiag::lowest_eigenpair(&op.diag, &op.offdiag)?;
    let u = op.stencil.nodal_values(&v);
    Ok(SpectralResult::single(op.beta, lambda, u, op.grid_size()))
}

/// First eigenvalue of `-Δ + β·σ`, solved on grids `m` and `2m`.
pub fn lambda1_beta(man: &ModelManifold, beta: f64, m: usize) -> Result<SpectralResult> {
    lambda1_beta_with(man, beta, &SolveOptions::with_grid(m))
}

pub fn lambda1_beta_with(
    man: &ModelManifold,
    beta: f64,
    opts: &SolveOptions,
) -> Result<SpectralResult> {
    if let Some(factors) = man.factors() {
        let results = factors
            .iter()
            .map(|f| lambda1_beta_with(f, beta, opts))
            .collect::<Result<Vec<_>>>()?;
        return eigen_product(&results);
    }
    let coarse = first_eigenpair(&discretize(man, beta, opts.grid)?)?;
    let fine_op = discretize(man, beta, 2 * opts.grid)?;
    let mut fine = first_eigenpair(&fine_op)?;
    let scale = 1.0 / (fine_op.stencil.extent * fine_op.stencil.extent);
    let cert = (coarse.lambda1 - fine.lambda1).abs() / fine.lambda1.abs().max(scale);
    if !(cert < 10.0 * opts.tol) {
        return Err(numerical(
            format!(
                "grids {} and {} disagree beyond 10 x {:e}",
                opts.grid,
                2 * opts.grid,
                opts.tol
            ),
            cert,
        ));
    }
    fine.richardson_estimate = Some((4.0 * fine.lambda1 - coarse.lambda1) / 3.0);
    fine.certificate = Some(cert);
    Ok(fine)
}

/// Stabilized scalar curvature `4 λ₁(-Δ + σ/4)`.
pub fn sc_stab(man: &ModelManifold, m: usize) -> Result<SpectralResult> {
    lambda1_beta(man, 0.25, m)
}

pub fn sc_stab_with(man: &ModelManifold, opts: &SolveOptions) -> Result<SpectralResult> {
    lambda1_beta_with(man, 0.25, opts)
}

/// `4 λ₁(-Δ) + σ` for manifolds of constant scalar curvature `σ`.
pub fn constant_curvature_sc(man: &ModelManifold, m: usize) -> Result<f64> {
    let sigma = man.constant_scalar_curvature().ok_or_else(|| {
        Error::InvalidKind(format!("{:?} does not have constant scalar curvature", man.kind()))
    })?;
    Ok(4.0 * lambda1_beta(man, 0.0, m)?.lambda1 + sigma)
}

/// Combines factor results of a Riemannian product: eigenvalues add.
pub fn eigen_product(results: &[SpectralResult]) -> Result<SpectralResult> {
    if results.len() < 2 {
        return Err(invalid(format!(
            "a product needs at least two factors, got {}",
            results.len()
        )));
    }
    let beta = results[0].beta;
    if results.iter().any(|r| r.beta != beta) {
        return Err(invalid("product factors were solved with different beta"));
    }
    let lambda1: f64 = results.iter().map(|r| r.lambda1).sum();
    let richardson = results.iter().map(|r| r.richardson_estimate).sum();
    let certificate = results
        .iter()
        .map(|r| r.certificate)
        .try_fold(0.0f64, |acc, c| c.map(|c| acc.max(c)));
    Ok(SpectralResult {
        beta,
        lambda1,
        eigenfunction: Vec::new(),
        grid_size: results.iter().map(|r| r.grid_size).max().unwrap_or(0),
        richardson_estimate: richardson,
        certificate,
        sc_stab: results.iter().map(|r| r.sc_stab).sum(),
        factors: results.to_vec(),
    })
}

/// Stabilized curvature of concentric sub-balls; radii must be non-decreasing.
pub fn exhaustion_limit(
    man: &ModelManifold,
    radii: &[f64],
    m: usize,
) -> Result<Vec<SpectralResult>> {
    if !man.is_radial() {
        return Err(Error::InvalidKind(format!(
            "exhaustion needs a radial manifold, got {:?}",
            man.kind()
        )));
    }
    if let Some(w) = radii.windows(2).find(|w| w[1] < w[0]) {
        return Err(invalid(format!(
            "radii must be non-decreasing, found {} after {}",
            w[1], w[0]
        )));
    }
    radii
        .iter()
        .map(|&r| sc_stab(&man.with_radius(r)?, m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_interval, ModelManifold};
    use core::f64::consts::PI;

    #[test]
    fn operator_structure() {
        for man in [
            make_interval(0.0, 1.0).unwrap(),
            ModelManifold::flat_ball(3, 1.0).unwrap(),
            ModelManifold::hemisphere(4).unwrap(),
            ModelManifold::hyperbolic_ball(3, 5.0).unwrap(),
        ] {
            let op = discretize(&man, 0.25, 64).unwrap();
            assert_eq!(op.grid_size(), 64);
            assert!(op.offdiag().iter().all(|&e| e < 0.0));
        }
    }

    #[test]
    fn rejects_products_and_tiny_grids() {
        let i = make_interval(0.0, 1.0).unwrap();
        assert!(matches!(
            discretize(&ModelManifold::rect_box(&[1.0, 2.0]).unwrap(), 0.25, 64),
            Err(Error::InvalidKind(_))
        ));
        assert!(discretize(&i, 0.25, 8).is_err());
    }

    #[test]
    fn interval_eigenvalue() {
        let op = discretize(&make_interval(0.0, 1.0).unwrap(), 0.25, 2000).unwrap();
        let r = first_eigenpair(&op).unwrap();
        assert!((r.lambda1 - PI * PI).abs() < 1e-3);
        assert!(r.eigenfunction.iter().all(|&u| u > 0.0));
    }

    #[test]
    fn hemisphere_beta_half() {
        let r = lambda1_beta(&ModelManifold::hemisphere(2).unwrap(), 0.5, 1000).unwrap();
        assert!((r.lambda1 - 3.0).abs() < 1e-3);
        let r = lambda1_beta(&ModelManifold::hemisphere(2).unwrap(), 0.25, 1000).unwrap();
        assert!((r.sc_stab - 10.0).abs() < 1e-2);
    }

    #[test]
    fn product_needs_matching_beta() {
        let i = make_interval(0.0, 1.0).unwrap();
        let a = lambda1_beta(&i, 0.25, 64).unwrap();
        let b = lambda1_beta(&i, 0.5, 64).unwrap();
        assert!(eigen_product(&[a.clone(), b]).is_err());
        assert!(eigen_product(core::slice::from_ref(&a)).is_err());
        let p = eigen_product(&[a.clone(), a.clone()]).unwrap();
        assert_eq!(p.lambda1, 2.0 * a.lambda1);
        assert_eq!(p.sc_stab, 2.0 * a.sc_stab);
    }

    #[test]
    fn exhaustion_radii_order() {
        let b = ModelManifold::flat_ball(2, 1.0).unwrap();
        assert!(exhaustion_limit(&b, &[2.0, 1.0], 64).is_err());
        assert!(exhaustion_limit(&make_interval(0.0, 1.0).unwrap(), &[1.0], 64).is_err());
        let seq = exhaustion_limit(&b, &[1.5, 1.5, 1.5], 64).unwrap();
        assert_eq!(seq[0].sc_stab, seq[1].sc_stab);
        assert_eq!(seq[1].sc_stab, seq[2].sc_stab);
    }

    #[test]
    fn gradient_is_exact_for_quadratics_away_from_center() {
        let st = Stencil::for_manifold(&make_interval(0.0, 1.0).unwrap(), 32).unwrap();
        let u: Vec<f64> = st.nodes().iter().map(|x| x * x - 3.0 * x).collect();
        let g = st.gradient(&u);
        for (x, gx) in st.nodes().iter().zip(&g) {
            assert!((gx - (2.0 * x - 3.0)).abs() < 1e-12);
        }
    }
}
