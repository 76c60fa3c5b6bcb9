//! Sup–inf characterization of the stabilized curvature.
//!
//! For every positive `θ`, `inf_x (σ - 4Δθ/θ)` is at most `4λ₁(-Δ + σ/4)`,
//! with equality at the first eigenfunction. The discrete version of this
//! holds exactly for the finite-volume stencil: at the node where `θ₁/θ` is
//! largest, `-Δ_hθ₁/θ₁ ≥ -Δ_hθ/θ`. [`maximize`] evaluates the functional on
//! a seeded family of trial functions and reports how close the best one
//! gets to the eigenvalue.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::geometry::ModelManifold;
use crate::spectral::{discretize, first_eigenpair, BoundaryCondition, Stencil};
use crate::warped::theta_form;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialKind {
    Constant,
    Eigenfunction,
    PerturbedEigenfunction,
    Spline,
    Exponential,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariationalReport {
    /// Largest value of the inf-functional over the trials.
    pub best_value: f64,
    /// `4λ₁` of the same discretization.
    pub eigen_value: f64,
    pub trials: usize,
    /// `eigen_value - best_value`.
    pub gap: f64,
    pub best_trial: usize,
    pub best_kind: TrialKind,
}

/// `min_x σ(x) - 4Δθ(x)/θ(x)` over the evaluation nodes.
pub fn inf_functional(st: &Stencil, theta: &[f64]) -> Result<f64> {
    Ok(theta_form(st, theta)?.min())
}

/// Deterministic generator of positive trial functions on a stencil.
pub struct TrialFamily<'a> {
    stencil: &'a Stencil,
    eigenfunction: &'a [f64],
    rng: ChaCha8Rng,
    next: usize,
}

impl<'a> TrialFamily<'a> {
    pub fn new(stencil: &'a Stencil, eigenfunction: &'a [f64], seed: u64) -> Self {
        Self {
            stencil,
            eigenfunction,
            rng: ChaCha8Rng::seed_from_u64(seed),
            next: 0,
        }
    }

    /// Node coordinates mapped to `[0, 1]`.
    fn unit_coords(&self) -> Vec<f64> {
        let nodes = self.stencil.nodes();
        match self.stencil.bc() {
            BoundaryCondition::DirichletBoth => {
                let h = self.stencil.h();
                let a = nodes[0] - h;
                let len = self.stencil.extent();
                nodes.iter().map(|x| (x - a) / len).collect()
            }
            BoundaryCondition::DirichletOuterRegularCenter => {
                let r = self.stencil.extent();
                nodes.iter().map(|x| x / r).collect()
            }
        }
    }

    /// Random multiplicative perturbation `θ₁ exp(ε η)` with `η` a sum of bumps.
    pub fn perturbed_eigenfunction(&mut self) -> Vec<f64> {
        let s = self.unit_coords();
        let eps = self.rng.gen_range(0.01..0.5);
        let bumps: Vec<(f64, f64, f64)> = (0..3)
            .map(|_| {
                (
                    self.rng.gen_range(-1.0..1.0),
                    self.rng.gen_range(0.0..1.0),
                    self.rng.gen_range(0.05..0.4),
                )
            })
            .collect();
        s.iter()
            .zip(self.eigenfunction)
            .map(|(&x, &e)| {
                let eta: f64 = bumps
                    .iter()
                    .map(|&(amp, c, w)| amp * (-((x - c) / w).powi(2)).exp())
                    .sum();
                e * (eps * eta).exp()
            })
            .collect()
    }

    /// Positive combination of cubic B-splines on eight uniform knots.
    pub fn spline(&mut self) -> Vec<f64> {
        let s = self.unit_coords();
        let coeffs: Vec<f64> = (0..11).map(|_| self.rng.gen_range(0.05..1.0)).collect();
        s.iter()
            .map(|&x| {
                let t = x * 8.0;
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c * cubic_bspline(t - k as f64 + 1.0))
                    .sum::<f64>()
                    + 1e-3
            })
            .collect()
    }

    /// `exp(a s + b s²)` in the unit coordinate.
    pub fn exponential(&mut self) -> Vec<f64> {
        let a = self.rng.gen_range(-3.0..3.0);
        let b = self.rng.gen_range(-3.0..3.0);
        self.unit_coords()
            .iter()
            .map(|&x| (a * x + b * x * x).exp())
            .collect()
    }
}

impl Iterator for TrialFamily<'_> {
    type Item = (TrialKind, Vec<f64>);

    /// Constant, eigenfunction, then perturbed eigenfunctions, splines and
    /// exponentials in rotation.
    fn next(&mut self) -> Option<Self::Item> {
        let i = self.next;
        self.next += 1;
        Some(match i {
            0 => (TrialKind::Constant, alloc::vec![1.0; self.stencil.len()]),
            1 => (TrialKind::Eigenfunction, self.eigenfunction.to_vec()),
            _ => match (i - 2) % 3 {
                0 => (TrialKind::PerturbedEigenfunction, self.perturbed_eigenfunction()),
                1 => (TrialKind::Spline, self.spline()),
                _ => (TrialKind::Exponential, self.exponential()),
            },
        })
    }
}

/// Uniform cubic B-spline supported on `[0, 4)`.
fn cubic_bspline(t: f64) -> f64 {
    if !(0.0..4.0).contains(&t) {
        return 0.0;
    }
    let (k, u) = (t.floor(), t - t.floor());
    match k as i32 {
        0 => u * u * u / 6.0,
        1 => (-3.0 * u * u * u + 3.0 * u * u + 3.0 * u + 1.0) / 6.0,
        2 => (3.0 * u * u * u - 6.0 * u * u + 4.0) / 6.0,
        _ => (1.0 - u).powi(3) / 6.0,
    }
}

/// Best inf-functional over `trials` members of the seeded trial family.
pub fn maximize(man: &ModelManifold, trials: usize, seed: u64, m: usize) -> Result<VariationalReport> {
    if trials == 0 {
        return Err(invalid("maximize needs at least one trial"));
    }
    let op = discretize(man, 0.25, m)?;
    let eig = first_eigenpair(&op)?;
    let st = op.stencil();
    let mut best = (f64::NEG_INFINITY, 0, TrialKind::Constant);
    for (i, (kind, theta)) in TrialFamily::new(st, &eig.eigenfunction, seed)
        .take(trials)
        .enumerate()
    {
        let v = inf_functional(st, &theta)?;
        if v > best.0 {
            best = (v, i, kind);
        }
    }
    Ok(VariationalReport {
        best_value: best.0,
        eigen_value: eig.sc_stab,
        trials,
        gap: eig.sc_stab - best.0,
        best_trial: best.1,
        best_kind: best.2,
    })
}
