use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use scx_core::clifford::{
    additivity_instance, build_clifford, curvature_endomorphism, hermitian_spectrum,
    partial_endomorphism, tensor_curvature, CMatrix, CurvatureData,
};
use scx_core::geometry::RadialProfile;
use scx_core::spectral::{discretize, first_eigenpair, Stencil};
use scx_core::tridiag::{lowest_eigenpair, sturm_count};
use scx_core::variational::inf_functional;
use scx_core::warped::{geometric_mean_reduce, sample, warped_sc, WarpingFamily};
use scx_core::{make_interval, radius_from_mean_curvature, sc_stab, ModelManifold, Warp};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sturm_bisection_matches_dense_solver(
        diag in prop::collection::vec(-5.0f64..5.0, 2..30),
        seed in any::<u64>(),
    ) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = diag.len();
        let off: Vec<f64> = (0..m - 1).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let dense = nalgebra::DMatrix::from_fn(m, m, |i, j| {
            if i == j { diag[i] } else if i + 1 == j { off[i] } else if j + 1 == i { off[j] } else { 0.0 }
        });
        let mut ev: Vec<f64> = dense.symmetric_eigenvalues().iter().cloned().collect();
        ev.sort_by(f64::total_cmp);
        let (lambda, _) = lowest_eigenpair(&diag, &off).unwrap();
        prop_assert!((lambda - ev[0]).abs() < 1e-10);
        for (k, e) in ev.iter().enumerate() {
            prop_assert!(sturm_count(&diag, &off, e + 1e-8) > k);
        }
    }

    #[test]
    fn mean_curvature_round_trip(n in 2usize..9, kappa in -2.0f64..2.0, r in 0.05f64..1.2) {
        let p = RadialProfile::new(n, Warp::SpaceForm { kappa }, r).unwrap();
        let back = radius_from_mean_curvature(n, kappa, p.boundary_mean_curvature()).unwrap();
        prop_assert!((back - r).abs() < 1e-10);
    }

    #[test]
    fn nested_intervals_are_monotone(a in -1.0f64..0.0, l in 0.3f64..2.0, s in 0.05f64..0.9, t in 0.0f64..1.0) {
        let outer = make_interval(a, a + l).unwrap();
        let start = a + t * (1.0 - s) * l;
        let inner = make_interval(start, start + s * l).unwrap();
        let so = sc_stab(&outer, 400).unwrap().sc_stab;
        let si = sc_stab(&inner, 400).unwrap().sc_stab;
        prop_assert!(si >= so);
    }
}

fn random_family(st: &Stencil, count: usize, rng: &mut ChaCha8Rng) -> WarpingFamily {
    use rand::Rng;
    let len = st.extent();
    let phis = (0..count)
        .map(|_| {
            let (a, b, c) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(0.5..4.0));
            sample(st, |x| (a * x / len + b * (c * x / len).sin()).exp())
        })
        .collect();
    WarpingFamily::new(st.clone(), phis).unwrap()
}

#[test]
fn geometric_mean_raises_warped_curvature() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let bases = [
        make_interval(0.0, 1.0).unwrap(),
        ModelManifold::hemisphere(3).unwrap(),
        ModelManifold::hyperbolic_ball(2, 2.0).unwrap(),
    ];
    for base in &bases {
        let st = Stencil::for_manifold(base, 300).unwrap();
        for count in 2..6 {
            let w = random_family(&st, count, &mut rng);
            let before = warped_sc(&w).unwrap();
            let after = warped_sc(&geometric_mean_reduce(&w).unwrap()).unwrap();
            for (b, a) in before.values.iter().zip(&after.values) {
                assert!(*a >= b - 1e-9 * b.abs().max(1.0), "{a} < {b}");
            }
        }
    }
}

#[test]
fn random_positive_functions_are_majorized() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for man in [
        make_interval(0.0, 2.0).unwrap(),
        ModelManifold::hemisphere(2).unwrap(),
        ModelManifold::radial_custom(3, 1.0, &[-0.1, 0.01]).unwrap(),
    ] {
        let op = discretize(&man, 0.25, 300).unwrap();
        let eig = first_eigenpair(&op).unwrap();
        let st = op.stencil();
        for _ in 0..50 {
            let eps: f64 = rng.gen_range(0.0..1.0);
            let c: f64 = rng.gen_range(0.0..1.0);
            let theta: Vec<f64> = eig
                .eigenfunction
                .iter()
                .zip(st.nodes())
                .map(|(u, x)| u * (eps * (7.0 * x / st.extent() + c).sin()).exp())
                .collect();
            let v = inf_functional(st, &theta).unwrap();
            assert!(v <= eig.sc_stab * (1.0 + 1e-9));
        }
    }
}

#[test]
fn clifford_lower_bound_and_partial_spectra() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..30 {
        let inst = additivity_instance(&mut rng).unwrap();
        assert!(inst.gap() >= -1e-9, "{inst:?}");
    }
    for m in 2..=4 {
        let rep = build_clifford(m).unwrap();
        let v1 = CurvatureData::random(m, 2, &mut rng).unwrap();
        let k1 = curvature_endomorphism(&rep, &v1).unwrap();
        let p = partial_endomorphism(&rep, &v1, 3).unwrap();
        let mut expected: Vec<f64> = k1.eigenvalues.iter().flat_map(|&e| [e; 3]).collect();
        expected.sort_by(f64::total_cmp);
        for (a, b) in p.eigenvalues.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}

#[test]
fn curvature_spectrum_is_basis_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let rep = build_clifford(4).unwrap();
    let data = CurvatureData::random(4, 3, &mut rng).unwrap();
    let base = curvature_endomorphism(&rep, &data).unwrap();
    // unitary from the QR factor of a random complex matrix
    use rand::Rng;
    let a = CMatrix::from_fn(4, 4, |_, _| nalgebra::Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let u = a.qr().q();
    let turned = curvature_endomorphism(&rep.conjugate(&u).unwrap(), &data).unwrap();
    for (x, y) in base.eigenvalues.iter().zip(&turned.eigenvalues) {
        assert!((x - y).abs() < 1e-10);
    }
    let twice = tensor_curvature(&data, &data).unwrap();
    let k = curvature_endomorphism(&rep, &twice).unwrap();
    assert_eq!(k.eigenvalues, hermitian_spectrum(&k.matrix));
}
