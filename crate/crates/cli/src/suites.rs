//! Verification suites behind `scx verify`.
//!
//! Every check records a measured quantity, the bound it is held to and the
//! direction of the comparison, so a failing run shows by how much.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use scx_core::bessel::{bessel_j, first_zero, flat_ball_sc};
use scx_core::clifford::{
    additivity_instance, build_clifford, curvature_endomorphism, hermitian_spectrum,
    partial_endomorphism, CurvatureData,
};
use scx_core::comparison::{catalog, compare_sc_stab, hyperbolic_c, hyperbolic_sc, transplant_check};
use scx_core::geometry::RadialProfile;
use scx_core::spectral::{discretize, first_eigenpair, lambda1_beta, Stencil};
use scx_core::variational::{inf_functional, maximize};
use scx_core::warped::{geometric_mean_reduce, sample, warped_sc, WarpingFamily};
use scx_core::{
    eigen_product, exhaustion_limit, make_interval, radius_from_mean_curvature, sc_stab,
    ModelManifold, Warp,
};

use crate::oracle::rectangle_lambda1;
use crate::{sig6, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Monotonicity,
    Additivity,
    Majorization,
    Warped,
    Comparison,
    Hyperbolic,
    Bessel,
    Clifford,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Monotonicity,
        Suite::Additivity,
        Suite::Majorization,
        Suite::Warped,
        Suite::Comparison,
        Suite::Hyperbolic,
        Suite::Bessel,
        Suite::Clifford,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Monotonicity => "monotonicity",
            Suite::Additivity => "additivity",
            Suite::Majorization => "majorization",
            Suite::Warped => "warped",
            Suite::Comparison => "comparison",
            Suite::Hyperbolic => "hyperbolic",
            Suite::Bessel => "bessel",
            Suite::Clifford => "clifford",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub property: String,
    pub passed: bool,
    pub measured: f64,
    pub relation: Relation,
    pub bound: f64,
}

impl Check {
    fn at_most(suite: Suite, property: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self {
            suite: suite.name(),
            property: property.into(),
            passed: measured <= bound,
            measured,
            relation: Relation::AtMost,
            bound,
        }
    }

    fn at_least(suite: Suite, property: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self {
            suite: suite.name(),
            property: property.into(),
            passed: measured >= bound,
            measured,
            relation: Relation::AtLeast,
            bound,
        }
    }

    pub fn text(&self) -> String {
        let rel = match self.relation {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
        };
        format!(
            "{} {}/{}: {} {rel} {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite,
            self.property,
            sig6(self.measured),
            sig6(self.bound)
        )
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub seed: u64,
    pub grid: usize,
}

pub fn run(suite: Suite, cfg: &VerifyConfig) -> Result<Vec<Check>, CliError> {
    if suite == Suite::All {
        let mut all = Vec::new();
        for s in Suite::EACH {
            all.extend(run(s, cfg)?);
        }
        return Ok(all);
    }
    Ok(match suite {
        Suite::Monotonicity => monotonicity(cfg)?,
        Suite::Additivity => additivity(cfg)?,
        Suite::Majorization => majorization(cfg)?,
        Suite::Warped => warped(cfg)?,
        Suite::Comparison => comparison(cfg)?,
        Suite::Hyperbolic => hyperbolic(cfg)?,
        Suite::Bessel => bessel()?,
        Suite::Clifford => clifford(cfg)?,
        Suite::All => unreachable!(),
    })
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Absolute grid uncertainty of a refined solve: the coarse/fine change.
fn grid_tol(r: &scx_core::SpectralResult) -> f64 {
    r.richardson_estimate
        .map(|e| 12.0 * (e - r.lambda1).abs())
        .unwrap_or(0.0)
}

fn monotonicity(cfg: &VerifyConfig) -> Result<Vec<Check>, CliError> {
    let s = Suite::Monotonicity;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst = f64::INFINITY;
    for k in 0..50 {
        let (outer, inner) = if k % 2 == 0 {
            let a = rng.gen_range(-1.0..0.0);
            let l = rng.gen_range(0.3..2.0);
            let frac = rng.gen_range(0.1..0.95);
            let start = a + rng.gen_range(0.0..1.0) * (1.0 - frac) * l;
            (make_interval(a, a + l)?, make_interval(start, start + frac * l)?)
        } else {
            let n = rng.gen_range(2..=5);
            let kappa = [-1.0, 0.0, 1.0][rng.gen_range(0..3)];
            let r = rng.gen_range(0.3..1.4);
            let outer = scx_core::make_space_form_ball(n, kappa, r)?;
            let inner = outer.with_radius(rng.gen_range(0.1..0.95) * r)?;
            (outer, inner)
        };
        let so = sc_stab(&outer, cfg.grid)?;
        let si = sc_stab(&inner, cfg.grid)?;
        let tol = 2.0 * grid_tol(&so).max(grid_tol(&si));
        worst = worst.min(si.sc_stab - so.sc_stab + tol);
    }
    let mut checks = vec![Check::at_least(s, "nested pairs, worst margin + grid tol", worst, 0.0)];
    for (name, man, radii) in [
        ("exhaustion flat ball n=3", ModelManifold::flat_ball(3, 1.0)?, vec![0.5, 1.0, 2.0, 4.0]),
        ("exhaustion hyperbolic ball n=3", ModelManifold::hyperbolic_ball(3, 1.0)?, vec![1.0, 2.0, 4.0, 8.0]),
        ("exhaustion sphere n=2", ModelManifold::spherical_cap(2, 1.0)?, vec![0.5, 1.0, 1.5, 2.0, 2.5, 3.0]),
    ] {
        let seq = exhaustion_limit(&man, &radii, cfg.grid)?;
        let rise = seq
            .windows(2)
            .map(|w| w[1].sc_stab - w[0].sc_stab)
            .fold(f64::NEG_INFINITY, f64::max);
        checks.push(Check::at_most(s, format!("{name}, largest step"), rise, 0.0));
    }
    Ok(checks)
}

fn additivity(cfg: &VerifyConfig) -> Result<Vec<Check>, CliError> {
    let s = Suite::Additivity;
    let b = ModelManifold::rect_box(&[1.0, 2.0, 3.0])?;
    let exact = 4.0 * PI * PI * (1.0 + 0.25 + 1.0 / 9.0);
    let parts = b
        .factors()
        .expect("boxes have factors")
        .iter()
        .map(|f| sc_stab(f, cfg.grid))
        .collect::<Result<Vec<_>, _>>()?;
    let got = eigen_product(&parts)?.sc_stab;
    let mut checks = vec![Check::at_most(s, "box 1x2x3 relative error", rel(got, exact), 1e-3)];

    let rect = ModelManifold::rect_box(&[1.0, 2.0])?;
    let via_product = sc_stab(&rect, cfg.grid)?.lambda1;
    let oracle = rectangle_lambda1(1.0, 2.0, 60, 120);
    checks.push(Check::at_most(s, "rectangle 1x2 vs 2-D oracle", rel(via_product, oracle), 5e-3));

    let mixed = scx_core::product(vec![ModelManifold::flat_ball(2, 1.0)?, ModelManifold::hemisphere(2)?])?;
    let want = flat_ball_sc(2, 1.0)? + 10.0;
    checks.push(Check::at_most(
        s,
        "ball x hemisphere vs 4j0^2 + 10",
        rel(sc_stab(&mixed, cfg.grid)?.sc_stab, want),
        5e-3,
    ));

    let cap = ModelManifold::spherical_cap(3, 1.0)?;
    let single = lambda1_beta(&cap, 0.5, cfg.grid)?.lambda1;
    let square = scx_core::product(vec![cap.clone(), cap])?;
    let double = lambda1_beta(&square, 0.5, cfg.grid)?.lambda1;
    checks.push(Check::at_most(s, "X x X at beta=1/2 doubles", rel(double, 2.0 * single), 1e-12));
    Ok(checks)
}

fn catalog_manifolds() -> Result<Vec<(&'static str, ModelManifold)>, CliError> {
    Ok(vec![
        ("interval [0,1]", make_interval(0.0, 1.0)?),
        ("hemisphere n=2", ModelManifold::hemisphere(2)?),
        ("flat ball n=3", ModelManifold::flat_ball(3, 1.0)?),
        ("cap n=3 r=1", ModelManifold::spherical_cap(3, 1.0)?),
        ("hyperbolic ball n=3 r=2", ModelManifold::hyperbolic_ball(3, 2.0)?),
        ("radial n=3 r=1", ModelManifold::radial_custom(3, 1.0, &[-0.1, 0.01])?),
    ])
}

fn majorization(cfg: &VerifyConfig) -> Result<Vec<Check>, CliError> {
    let s = Suite::Majorization;
    let mut checks = Vec::new();
    for (name, man) in catalog_manifolds()? {
        let v = maximize(&man, 200, cfg.seed, cfg.grid)?;
        let slack = 0.01 * v.eigen_value.abs();
        checks.push(Check::at_most(
            s,
            format!("{name}, best of 200 minus 4 lambda1"),
            v.best_value - v.eigen_value,
            slack,
        ));
        let op = discretize(&man, 0.25, cfg.grid)?;
        let eig = first_eigenpair(&op)?;
        let at_eig = inf_functional(op.stencil(), &eig.eigenfunction)?;
        checks.push(Check::at_most(
            s,
            format!("{name}, eigenfunction attains 4 lambda1"),
            rel(at_eig, eig.sc_stab),
            0.01,
        ));
    }
    Ok(checks)
}

fn random_family(st: &Stencil, count: usize, rng: &mut ChaCha8Rng) -> Result<WarpingFamily, CliError> {
    let len = st.extent();
    let phis = (0..count)
        .map(|_| {
            let (a, b, c) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(0.5..4.0));
            sample(st, |x| (a * x / len + b * (c * x / len).sin()).exp())
        })
        .collect();
    Ok(WarpingFamily::new(st.clone(), phis)?)
}

fn warped(cfg: &VerifyConfig) -> Result<Vec<Check>, CliError> {
    let s = Suite::Warped;
    let mut checks = Vec::new();
    for (name, man) in catalog_manifolds()? {
        let op = discretize(&man, 0.5, cfg.grid)?;
        let eig = first_eigenpair(&op)?;
        let w = WarpingFamily::new(op.stencil().clone(), vec![eig.eigenfunction.clone()])?;
        let sc = warped_sc(&w)?;
        checks.push(Check::at_most(s, format!("{name}, spread of eigenfunction warp"), sc.relative_spread(), 0.01));
        let mean = sc.values.iter().sum::<f64>() / sc.values.len() as f64;
        checks.push(Check::at_most(
            s,
            format!("{name}, warp curvature vs 2 lambda1"),
            rel(mean, 2.0 * eig.lambda1),
            0.01,
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let bases = catalog_manifolds()?;
    let grid = cfg.grid.min(500);
    let mut violations = 0usize;
    let mut worst = f64::INFINITY;
    for k in 0..100 {
        let st = Stencil::for_manifold(&bases[k % bases.len()].1, grid)?;
        let w = random_family(&st, 2 + k % 4, &mut rng)?;
        let before = warped_sc(&w)?;
        let after = warped_sc(&geometric_mean_reduce(&w)?)?;
        for (b, a) in before.values.iter().zip(&after.values) {
            let margin = a - b;
            worst = worst.min(margin);
            if margin < -1e-9 * b.abs().max(1.0) {
                violations += 1;
            }
        }
    }
    checks.push(Check::at_most(s, "geometric mean, node violations in 100 families", violations as f64, 0.0));
    checks.push(Check::at_least(s, "geometric mean, smallest gain", worst, -1e-9));
    Ok(checks)
}

fn comparison(cfg: &VerifyConfig) -> Result<Vec<Check>, CliError> {
    let s = Suite::Comparison;
    let mut checks = Vec::new();
    for (n, kappa) in [(3, -1.0), (3, 0.0), (3, 1.0)] {
        let cases = catalog(n, kappa, 20, cfg.grid)?;
        let mut worst = f64::INFINITY;
        let mut worst_transplant = f64::INFINITY;
        for c in &cases {
            let o = compare_sc_stab(c, cfg.grid)?;
            worst = worst.min(o.margin() + o.tol);
            worst_transplant = worst_transplant.min(transplant_check(c, cfg.grid)?.min_margin);
        }
        checks.push(Check::at_least(
            s,
            format!("kappa={kappa}, 20 profiles, worst margin + grid tol"),
            worst,
            0.0,
        ));
        checks.push(Check::at_least(s, format!("kappa={kappa}, transplant quotient margin"), worst_transplant, -1e-9));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let n = rng.gen_range(2..=8);
        let kappa = rng.gen_range(-2.0..2.0);
        let r = rng.gen_range(0.05..1.2);
        let p = RadialProfile::new(n, Warp::SpaceForm { kappa }, r)?;
        let back = radius_from_mean_curvature(n, kappa, p.boundary_mean_curvature())?;
        worst = worst.max((back - r).abs());
    }
    checks.push(Check::at_most(s, "mean-curvature radius round trip", worst, 1e-10));
    Ok(checks)
}

fn hyperbolic(cfg: &VerifyConfig) -> Result<Vec<Check>, CliError> {
    let s = Suite::Hyperbolic;
    let mut checks = Vec::new();
    for n in [2, 3, 4] {
        for r in [1.0, 1.5, 2.0, 3.0] {
            let c = hyperbolic_c(n, r, cfg.grid)?;
            checks.push(Check::at_least(s, format!("c(r) n={n} r={r} lower"), c, 1.0 / 6.0 - 0.02));
            checks.push(Check::at_most(s, format!("c(r) n={n} r={r} upper"), c, 1.02));
        }
        let nf = n as f64;
        let r0 = 0.99 * (6.0 * (nf - 1.0) / (5.0 * nf + 1.0)).sqrt();
        checks.push(Check::at_least(s, format!("Sc n={n} at small radius {}", sig6(r0)), hyperbolic_sc(n, r0, cfg.grid)?, 0.0));
        checks.push(Check::at_most(s, format!("Sc n={n} at r=3"), hyperbolic_sc(n, 3.0, cfg.grid)?, 0.0));
    }
    checks.push(Check::at_least(s, "c(20) n=3", hyperbolic_c(3, 20.0, cfg.grid)?, 0.9));
    Ok(checks)
}

/// First sign change of `J_ν` by scanning and bisection, independent of the
/// zero finder's own bracketing.
fn bisection_zero(nu: f64) -> Result<f64, CliError> {
    let mut a = 1e-3;
    let step = 0.01;
    while bessel_j(nu, a + step)? > 0.0 {
        a += step;
    }
    let mut b = a + step;
    for _ in 0..80 {
        let mid = 0.5 * (a + b);
        if bessel_j(nu, mid)? > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

fn bessel() -> Result<Vec<Check>, CliError> {
    let s = Suite::Bessel;
    let mut checks = Vec::new();
    for nu in [0.6, 1.0, 2.0, 3.0, 5.0, 10.0, 12.0] {
        let z = first_zero(nu)?;
        let (lo, hi) = z.enclosure.expect("orders above 1/2 carry an enclosure");
        checks.push(Check::at_least(s, format!("nu={nu} above lower bound"), z.j - lo, f64::MIN_POSITIVE));
        checks.push(Check::at_least(s, format!("nu={nu} below upper bound"), hi - z.j, f64::MIN_POSITIVE));
    }
    checks.push(Check::at_most(s, "j_{1/2} = pi", (first_zero(0.5)?.j - PI).abs(), 1e-9));
    checks.push(Check::at_most(s, "j_{-1/2} = pi/2", (first_zero(-0.5)?.j - PI / 2.0).abs(), 1e-9));
    checks.push(Check::at_most(s, "j_0 vs bisection", (first_zero(0.0)?.j - bisection_zero(0.0)?).abs(), 1e-6));
    checks.push(Check::at_most(s, "j_0 vs 2.404826", (first_zero(0.0)?.j - 2.404826).abs(), 1e-6));
    Ok(checks)
}

fn clifford(cfg: &VerifyConfig) -> Result<Vec<Check>, CliError> {
    let s = Suite::Clifford;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst = f64::INFINITY;
    for _ in 0..50 {
        worst = worst.min(additivity_instance(&mut rng)?.gap());
    }
    let mut checks = vec![Check::at_least(s, "tensor lower bound, 50 instances, smallest gap", worst, -1e-9)];

    let rep = build_clifford(2)?;
    let mut err = 0.0f64;
    for c in [0.0, 1.0, -2.5, 0.3, 7.0] {
        let k = curvature_endomorphism(&rep, &CurvatureData::line_bundle(2, &[c])?)?;
        err = err.max((k.lambda_min + c.abs()).abs());
    }
    checks.push(Check::at_most(s, "m=2 line bundle closed form", err, 1e-10));

    let mut spec_err = 0.0f64;
    for _ in 0..10 {
        let m = rng.gen_range(2..=4);
        let (d1, d2) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let rep = build_clifford(m)?;
        let v1 = CurvatureData::random(m, d1, &mut rng)?;
        let full = curvature_endomorphism(&rep, &v1)?;
        let part = partial_endomorphism(&rep, &v1, d2)?;
        let mut want: Vec<f64> = full
            .eigenvalues
            .iter()
            .flat_map(|&e| std::iter::repeat_n(e, d2))
            .collect();
        want.sort_by(f64::total_cmp);
        let mut got = hermitian_spectrum(&part.matrix);
        got.sort_by(f64::total_cmp);
        if got.len() != want.len() {
            spec_err = f64::INFINITY;
            continue;
        }
        for (g, w) in got.iter().zip(&want) {
            spec_err = spec_err.max((g - w).abs());
        }
    }
    checks.push(Check::at_most(s, "partial spectra repeat with multiplicity", spec_err, 1e-10));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_suites_pass() {
        let cfg = VerifyConfig { seed: 42, grid: 400 };
        for suite in [Suite::Bessel, Suite::Clifford] {
            let checks = run(suite, &cfg).unwrap();
            assert!(!checks.is_empty());
            for c in &checks {
                assert!(c.passed, "{}", c.text());
            }
        }
    }

    #[test]
    fn check_text() {
        let c = Check::at_most(Suite::Bessel, "x", 2.0, 1.0);
        assert!(!c.passed);
        assert_eq!(c.text(), "FAIL bessel/x: 2.00000 <= 1.00000");
    }
}
