use std::f64::consts::PI;

use scx_core::bessel::flat_ball_sc;
use scx_core::comparison::{hyperbolic_c, hyperbolic_sc};
use scx_core::spectral::{constant_curvature_sc, discretize, first_eigenpair, SolveOptions};
use scx_core::{eigen_product, exhaustion_limit, lambda1_beta, make_interval, sc_stab, ModelManifold};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn interval_is_pi_squared_over_length_squared() {
    for (a, b) in [(0.0, 1.0), (-2.0, 1.0), (3.0, 3.5)] {
        let l: f64 = b - a;
        let r = sc_stab(&make_interval(a, b).unwrap(), 2000).unwrap();
        assert!(rel(r.sc_stab, 4.0 * PI * PI / (l * l)) < 1e-5);
        assert!(r.certificate.unwrap() < 1e-5);
    }
}

#[test]
fn box_is_sum_over_sides() {
    let b = ModelManifold::rect_box(&[1.0, 2.0, 3.0]).unwrap();
    let r = sc_stab(&b, 2000).unwrap();
    let exact = 4.0 * PI * PI * (1.0 + 0.25 + 1.0 / 9.0);
    assert!(rel(r.sc_stab, exact) < 1e-4);
    assert_eq!(r.factors.len(), 3);
}

#[test]
fn hemispheres_are_n_times_n_plus_3() {
    for n in [2, 3, 4, 8] {
        let r = sc_stab(&ModelManifold::hemisphere(n).unwrap(), 2000).unwrap();
        let exact = (n * (n + 3)) as f64;
        assert!(rel(r.sc_stab, exact) < 1e-4, "n={n}: {}", r.sc_stab);
    }
}

#[test]
fn flat_balls_match_bessel() {
    for n in 2..=8 {
        let r = sc_stab(&ModelManifold::flat_ball(n, 1.0).unwrap(), 2000).unwrap();
        let want = flat_ball_sc(n, 1.0).unwrap();
        assert!(rel(r.sc_stab, want) < 1e-4, "n={n}: {} vs {want}", r.sc_stab);
    }
}

#[test]
fn hyperbolic_three_ball_closed_form() {
    // u = v / sinh ρ turns the radial problem into -v'' + v = λ v on [0, r]
    for r in [0.5, 1.0, 2.0, 3.0, 6.0] {
        let lambda = lambda1_beta(&ModelManifold::hyperbolic_ball(3, r).unwrap(), 0.0, 2000)
            .unwrap()
            .lambda1;
        assert!(rel(lambda, 1.0 + PI * PI / (r * r)) < 1e-5, "r={r}");
        let c = hyperbolic_c(3, r, 2000).unwrap();
        assert!((c - (1.0 + (PI * PI - 1.0) / (r * r))).abs() < 1e-4);
        let sc = hyperbolic_sc(3, r, 2000).unwrap();
        assert!((sc - (-2.0 + 4.0 * PI * PI / (r * r))).abs() < 1e-3);
    }
}

#[test]
fn hyperbolic_small_radius_matches_flat_leading_order() {
    for n in [2, 3, 4] {
        let r = 0.01;
        let sc = hyperbolic_sc(n, r, 2000).unwrap();
        let flat = flat_ball_sc(n, r).unwrap();
        assert!(rel(sc, flat) < 1e-3, "n={n}");
    }
}

#[test]
fn constant_curvature_route_agrees_with_beta_quarter() {
    for man in [
        ModelManifold::hemisphere(3).unwrap(),
        ModelManifold::spherical_cap(5, 1.0).unwrap(),
        ModelManifold::hyperbolic_ball(4, 2.0).unwrap(),
        ModelManifold::flat_ball(2, 1.5).unwrap(),
    ] {
        let a = constant_curvature_sc(&man, 2000).unwrap();
        let b = sc_stab(&man, 2000).unwrap().sc_stab;
        assert!((a - b).abs() < 1e-8 * b.abs().max(1.0));
    }
}

#[test]
fn scaling_law_for_flat_domains() {
    for t in [0.5, 2.0, 3.0] {
        let one = lambda1_beta(&ModelManifold::flat_ball(3, 1.0).unwrap(), 0.0, 2000).unwrap();
        let scaled = lambda1_beta(&ModelManifold::flat_ball(3, t).unwrap(), 0.0, 2000).unwrap();
        assert!(rel(scaled.lambda1, one.lambda1 / (t * t)) < 1e-10);
        let i1 = lambda1_beta(&make_interval(0.0, 1.0).unwrap(), 0.0, 2000).unwrap();
        let it = lambda1_beta(&make_interval(0.0, t).unwrap(), 0.0, 2000).unwrap();
        assert!(rel(it.lambda1, i1.lambda1 / (t * t)) < 1e-8);
    }
}

#[test]
fn constant_potential_shift_is_exact() {
    let man = ModelManifold::hemisphere(4).unwrap();
    let op0 = discretize(&man, 0.0, 1000).unwrap();
    let base = first_eigenpair(&op0).unwrap().lambda1;
    let norm = op0
        .diag()
        .iter()
        .map(|d| d.abs() + 2.0 * op0.offdiag().iter().map(|e| e.abs()).fold(0.0, f64::max))
        .fold(0.0, f64::max);
    for beta in [0.1, 0.25, 0.5, 1.0] {
        let shifted = first_eigenpair(&discretize(&man, beta, 1000).unwrap()).unwrap().lambda1;
        assert!((shifted - base - beta * 12.0).abs() <= 16.0 * f64::EPSILON * norm);
    }
}

#[test]
fn subdomains_have_larger_values() {
    let mut prev = f64::INFINITY;
    for r in [0.5, 0.8, 1.0, 1.3, 1.5] {
        let v = sc_stab(&ModelManifold::spherical_cap(3, r).unwrap(), 1000).unwrap().sc_stab;
        assert!(v < prev);
        prev = v;
    }
    let ex = exhaustion_limit(&ModelManifold::hyperbolic_ball(3, 1.0).unwrap(), &[1.0, 2.0, 4.0, 8.0, 8.0], 1000)
        .unwrap();
    for w in ex.windows(2) {
        assert!(w[1].sc_stab <= w[0].sc_stab + 1e-9);
    }
    assert_eq!(ex[3].sc_stab, ex[4].sc_stab);
    // exhaustion of hyperbolic space tends to -(n-1)
    assert!((ex[4].sc_stab + 2.0 - 4.0 * PI * PI / 64.0).abs() < 1e-3);
}

#[test]
fn products_add() {
    let ball = lambda1_beta(&ModelManifold::flat_ball(2, 1.0).unwrap(), 0.25, 1000).unwrap();
    let hemi = lambda1_beta(&ModelManifold::hemisphere(2).unwrap(), 0.25, 1000).unwrap();
    let p = eigen_product(&[ball.clone(), hemi.clone()]).unwrap();
    assert_eq!(p.sc_stab, ball.sc_stab + hemi.sc_stab);
    let direct = sc_stab(
        &scx_core::product(vec![
            ModelManifold::flat_ball(2, 1.0).unwrap(),
            ModelManifold::hemisphere(2).unwrap(),
        ])
        .unwrap(),
        1000,
    )
    .unwrap();
    assert_eq!(direct.sc_stab, p.sc_stab);
    assert!(rel(direct.sc_stab, flat_ball_sc(2, 1.0).unwrap() + 10.0) < 1e-4);
}

#[test]
fn default_options_converge() {
    let o = SolveOptions::default();
    let r = scx_core::spectral::sc_stab_with(&ModelManifold::flat_ball(8, 1.0).unwrap(), &o).unwrap();
    assert!(rel(r.sc_stab, 162.82586) < 1e-5);
    let j3 = scx_core::bessel::first_zero(3.0).unwrap().j;
    let rich = r.richardson_estimate.unwrap();
    assert!(rel(4.0 * rich, 4.0 * j3 * j3) < 1e-7, "{rich}");
}
