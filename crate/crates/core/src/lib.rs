//! Torus-stabilized scalar curvature of model Riemannian manifolds.
//!
//! The stabilized curvature `Sc⋊(X)` of a compact manifold with boundary is
//! `4 λ₁` of the Dirichlet problem for `-Δ + Sc/4`. This crate computes it by
//! three independent routes and checks them against each other:
//!
//! * [`spectral`]: finite-volume discretization of the radial or interval
//!   reduction and a Sturm-bisection eigensolver;
//! * [`bessel`]: closed forms through first zeros of `J_ν` for flat balls;
//! * [`variational`]: the sup–inf characterization over positive test
//!   functions.
//!
//! [`warped`] evaluates the scalar curvature of warped torus extensions,
//! [`comparison`] the Ricci/Bishop comparison and hyperbolic-ball diagnostics,
//! and [`clifford`] the curvature endomorphism of a twisted Dirac operator.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod bessel;
pub mod clifford;
pub mod comparison;
pub mod error;
pub mod geometry;
pub mod spectral;
pub mod tridiag;
pub mod variational;
pub mod warped;

pub use error::{Error, Result};
pub use geometry::{
    make_interval, make_space_form_ball, product, radius_from_mean_curvature, ManifoldKind,
    ModelManifold, RadialProfile, Warp,
};
pub use spectral::{
    discretize, eigen_product, exhaustion_limit, first_eigenpair, lambda1_beta, sc_stab,
    DiscreteOperator, SolveOptions, SpectralResult,
};
