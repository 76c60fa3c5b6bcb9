//! Catalog of model manifolds and their one-dimensional radial reductions.
//!
//! Every supported geometry is either an interval, a product of intervals
//! (a box), a rotationally symmetric ball described by a [`RadialProfile`],
//! or a Riemannian product of these. A rotationally symmetric metric is
//! written `dρ² + sn(ρ)² g_{S^{n-1}}` with `ρ` the distance from the center,
//! and the volume density used throughout is `A(ρ) = sn(ρ)^{n-1}`. The
//! constant area of the unit sphere is left out of `A`; it cancels in every
//! Rayleigh quotient.
//!
//! Mean curvature is the trace of the second fundamental form, so the unit
//! Euclidean ball has boundary mean curvature `n - 1`.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{invalid, Result};

/// Largest radius accepted for a radial profile, in geodesic units.
pub const R_MAX_CAP: f64 = 1e3;

/// Sample count used to certify positivity of a polynomial warp.
const WARP_POSITIVITY_SAMPLES: usize = 4096;

/// Geodesic-sphere radius factor `sn(ρ)` of a rotationally symmetric metric.
#[derive(Debug, Clone, PartialEq)]
pub enum Warp {
    /// Space form of constant sectional curvature `kappa`.
    SpaceForm { kappa: f64 },
    /// `sn(ρ) = ρ + c₃ρ³ + c₅ρ⁵ + …`; `coeffs[k]` multiplies `ρ^(2k+3)`.
    ///
    /// Odd polynomials give a metric that is smooth through the center.
    OddPolynomial { coeffs: Vec<f64> },
}

impl Warp {
    pub fn sn(&self, d: f64) -> f64 {
        match self {
            Warp::SpaceForm { kappa } => {
                if *kappa > 0.0 {
                    let s = kappa.sqrt();
                    (s * d).sin() / s
                } else if *kappa < 0.0 {
                    let s = (-kappa).sqrt();
                    (s * d).sinh() / s
                } else {
                    d
                }
            }
            Warp::OddPolynomial { coeffs } => {
                let d2 = d * d;
                let mut p = d;
                let mut acc = d;
                for c in coeffs {
                    p *= d2;
                    acc += c * p;
                }
                acc
            }
        }
    }

    pub fn sn_prime(&self, d: f64) -> f64 {
        match self {
            Warp::SpaceForm { kappa } => {
                if *kappa > 0.0 {
                    (kappa.sqrt() * d).cos()
                } else if *kappa < 0.0 {
                    ((-kappa).sqrt() * d).cosh()
                } else {
                    1.0
                }
            }
            Warp::OddPolynomial { coeffs } => {
                let d2 = d * d;
                let mut p = 1.0;
                let mut acc = 1.0;
                for (k, c) in coeffs.iter().enumerate() {
                    p *= d2;
                    acc += (2 * k + 3) as f64 * c * p;
                }
                acc
            }
        }
    }

    pub fn sn_second(&self, d: f64) -> f64 {
        match self {
            Warp::SpaceForm { kappa } => -kappa * self.sn(d),
            Warp::OddPolynomial { coeffs } => {
                let d2 = d * d;
                let mut p = d;
                let mut acc = 0.0;
                for (k, c) in coeffs.iter().enumerate() {
                    let e = (2 * k + 3) as f64;
                    acc += e * (e - 1.0) * c * p;
                    p *= d2;
                }
                acc
            }
        }
    }

    /// `ln sn(ρ)`, evaluated without overflow for large hyperbolic radii.
    pub fn ln_sn(&self, d: f64) -> f64 {
        match self {
            Warp::SpaceForm { kappa } if *kappa < 0.0 => {
                let s = (-kappa).sqrt();
                let x = s * d;
                if x > 20.0 {
                    x + (-(-2.0 * x).exp()).ln_1p() - core::f64::consts::LN_2 - s.ln()
                } else {
                    (x.sinh() / s).ln()
                }
            }
            _ => self.sn(d).ln(),
        }
    }

    /// `sn′(ρ)/sn(ρ)`; the mean curvature of the geodesic sphere of radius `ρ`
    /// is `(n-1)` times this.
    pub fn log_derivative(&self, d: f64) -> f64 {
        match self {
            Warp::SpaceForm { kappa } => {
                if *kappa > 0.0 {
                    let s = kappa.sqrt();
                    s / (s * d).tan()
                } else if *kappa < 0.0 {
                    let s = (-kappa).sqrt();
                    s / (s * d).tanh()
                } else {
                    1.0 / d
                }
            }
            Warp::OddPolynomial { .. } => self.sn_prime(d) / self.sn(d),
        }
    }

    pub fn kappa(&self) -> Option<f64> {
        match self {
            Warp::SpaceForm { kappa } => Some(*kappa),
            Warp::OddPolynomial { .. } => None,
        }
    }
}

/// One-dimensional reduction of a rotationally symmetric ball.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    dim: usize,
    warp: Warp,
    r_max: f64,
}

impl RadialProfile {
    pub fn new(dim: usize, warp: Warp, r_max: f64) -> Result<Self> {
        if dim < 2 {
            return Err(invalid(format!("radial profiles need dimension >= 2, got {dim}")));
        }
        if !(r_max > 0.0) || !r_max.is_finite() {
            return Err(invalid(format!("radius must be positive and finite, got {r_max}")));
        }
        if r_max > R_MAX_CAP {
            return Err(invalid(format!(
                "radius {r_max} exceeds the cap of {R_MAX_CAP} geodesic units"
            )));
        }
        match &warp {
            Warp::SpaceForm { kappa } => {
                if !kappa.is_finite() {
                    return Err(invalid("sectional curvature must be finite"));
                }
                if *kappa > 0.0 && r_max >= PI / kappa.sqrt() {
                    return Err(invalid(format!(
                        "radius {r_max} must be below pi/sqrt(kappa) = {} for kappa = {kappa}",
                        PI / kappa.sqrt()
                    )));
                }
            }
            Warp::OddPolynomial { coeffs } => {
                if coeffs.iter().any(|c| !c.is_finite()) {
                    return Err(invalid("warp coefficients must be finite"));
                }
                for k in 1..=WARP_POSITIVITY_SAMPLES {
                    let d = r_max * k as f64 / WARP_POSITIVITY_SAMPLES as f64;
                    let s = warp.sn(d);
                    if !(s > 0.0) {
                        return Err(invalid(format!(
                            "warp function is not positive at radius {d} (sn = {s})"
                        )));
                    }
                }
            }
        }
        Ok(Self { dim, warp, r_max })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn warp(&self) -> &Warp {
        &self.warp
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn kappa(&self) -> Option<f64> {
        self.warp.kappa()
    }

    /// Same warp, different outer radius.
    pub fn with_radius(&self, r_max: f64) -> Result<Self> {
        Self::new(self.dim, self.warp.clone(), r_max)
    }

    pub fn sn(&self, d: f64) -> f64 {
        self.warp.sn(d)
    }

    /// `A(ρ) = sn(ρ)^{n-1}`.
    pub fn density(&self, d: f64) -> f64 {
        self.ln_density(d).exp()
    }

    pub fn ln_density(&self, d: f64) -> f64 {
        (self.dim - 1) as f64 * self.warp.ln_sn(d)
    }

    /// `A′/A = (n-1) sn′/sn`, which is also the mean curvature of the sphere of radius `ρ`.
    pub fn mean_curvature(&self, d: f64) -> f64 {
        (self.dim - 1) as f64 * self.warp.log_derivative(d)
    }

    pub fn boundary_mean_curvature(&self) -> f64 {
        self.mean_curvature(self.r_max)
    }

    /// Sectional curvature of planes containing the radial direction, `-sn″/sn`.
    pub fn radial_sectional(&self, d: f64) -> f64 {
        match self.warp {
            Warp::SpaceForm { kappa } => kappa,
            Warp::OddPolynomial { .. } => -self.warp.sn_second(d) / self.warp.sn(d),
        }
    }

    /// Sectional curvature of planes tangent to the geodesic sphere, `(1 - sn′²)/sn²`.
    pub fn tangential_sectional(&self, d: f64) -> f64 {
        match self.warp {
            Warp::SpaceForm { kappa } => kappa,
            Warp::OddPolynomial { .. } => {
                let s = self.warp.sn(d);
                let p = self.warp.sn_prime(d);
                (1.0 - p) * (1.0 + p) / (s * s)
            }
        }
    }

    /// Ricci curvature in the radial direction and in any tangential direction.
    pub fn ricci(&self, d: f64) -> (f64, f64) {
        let n1 = (self.dim - 1) as f64;
        let kr = self.radial_sectional(d);
        let kt = self.tangential_sectional(d);
        (n1 * kr, kr + (self.dim as f64 - 2.0) * kt)
    }

    /// Scalar curvature `σ(ρ)`; exactly `n(n-1)κ` for space forms.
    pub fn scalar_curvature(&self, d: f64) -> f64 {
        let n = self.dim as f64;
        match self.warp {
            Warp::SpaceForm { kappa } => n * (n - 1.0) * kappa,
            Warp::OddPolynomial { .. } => {
                2.0 * (n - 1.0) * self.radial_sectional(d)
                    + (n - 1.0) * (n - 2.0) * self.tangential_sectional(d)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ManifoldKind {
    Interval,
    Box,
    SpaceFormBall,
    SphericalCap,
    HyperbolicBall,
    RadialCustom,
    Product,
}

/// A supported model geometry.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelManifold {
    Interval(Interval),
    /// `[0, s₁] × … × [0, s_k]`.
    Box(Vec<f64>),
    SpaceFormBall(RadialProfile),
    /// Geodesic ball of the unit sphere; the hemisphere has radius `π/2`.
    SphericalCap(RadialProfile),
    /// Geodesic ball of curvature `-1` hyperbolic space.
    HyperbolicBall(RadialProfile),
    RadialCustom(RadialProfile),
    Product(Vec<ModelManifold>),
}

impl From<RadialProfile> for ModelManifold {
    /// Space-form warps become space-form balls, polynomial warps custom balls.
    fn from(p: RadialProfile) -> Self {
        match p.warp() {
            Warp::SpaceForm { .. } => ModelManifold::SpaceFormBall(p),
            Warp::OddPolynomial { .. } => ModelManifold::RadialCustom(p),
        }
    }
}

/// Closed interval `[a, b]` with Dirichlet endpoints.
pub fn make_interval(a: f64, b: f64) -> Result<ModelManifold> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(invalid("interval endpoints must be finite"));
    }
    if a >= b {
        return Err(invalid(format!("interval needs a < b, got [{a}, {b}]")));
    }
    Ok(ModelManifold::Interval(Interval { a, b }))
}

/// Geodesic `r`-ball of the simply connected space form of curvature `kappa`.
pub fn make_space_form_ball(n: usize, kappa: f64, r: f64) -> Result<ModelManifold> {
    RadialProfile::new(n, Warp::SpaceForm { kappa }, r).map(ModelManifold::SpaceFormBall)
}

/// Riemannian product of at least two factors.
pub fn product(factors: Vec<ModelManifold>) -> Result<ModelManifold> {
    if factors.len() < 2 {
        return Err(invalid(format!(
            "a product needs at least two factors, got {}",
            factors.len()
        )));
    }
    Ok(ModelManifold::Product(factors))
}

/// Radius of the space-form ball whose boundary has mean curvature `mu`,
/// i.e. the solution of `mu = (n-1) sn′(r)/sn(r)`.
pub fn radius_from_mean_curvature(n: usize, kappa: f64, mu: f64) -> Result<f64> {
    if n < 2 {
        return Err(invalid(format!("dimension must be >= 2, got {n}")));
    }
    if !(kappa.is_finite() && mu.is_finite()) {
        return Err(invalid("curvature parameters must be finite"));
    }
    let h = mu / (n - 1) as f64;
    let r = if kappa > 0.0 {
        let s = kappa.sqrt();
        // cot(s r) = h / s, with s r in (0, π)
        (FRAC_PI_2 - (h / s).atan()) / s
    } else if kappa < 0.0 {
        let s = (-kappa).sqrt();
        let x = h / s;
        if x <= 1.0 {
            return Err(invalid(format!(
                "no hyperbolic ball has boundary mean curvature {mu}: need mu > {}",
                (n - 1) as f64 * s
            )));
        }
        (1.0 / x).atanh() / s
    } else {
        if h <= 0.0 {
            return Err(invalid(format!(
                "no Euclidean ball has boundary mean curvature {mu}: need mu > 0"
            )));
        }
        1.0 / h
    };
    if !(r > 0.0) || r > R_MAX_CAP {
        return Err(invalid(format!(
            "mean curvature {mu} gives radius {r}, outside (0, {R_MAX_CAP}]"
        )));
    }
    Ok(r)
}

impl ModelManifold {
    pub fn interval(a: f64, b: f64) -> Result<Self> {
        make_interval(a, b)
    }

    pub fn rect_box(sides: &[f64]) -> Result<Self> {
        if sides.is_empty() {
            return Err(invalid("a box needs at least one side"));
        }
        if let Some(s) = sides.iter().find(|s| !(**s > 0.0) || !s.is_finite()) {
            return Err(invalid(format!("box sides must be positive, got {s}")));
        }
        Ok(ModelManifold::Box(sides.to_vec()))
    }

    pub fn flat_ball(n: usize, r: f64) -> Result<Self> {
        make_space_form_ball(n, 0.0, r)
    }

    /// Geodesic ball of angular radius `r` in the unit sphere.
    pub fn spherical_cap(n: usize, r: f64) -> Result<Self> {
        RadialProfile::new(n, Warp::SpaceForm { kappa: 1.0 }, r).map(ModelManifold::SphericalCap)
    }

    pub fn hemisphere(n: usize) -> Result<Self> {
        Self::spherical_cap(n, FRAC_PI_2)
    }

    pub fn hyperbolic_ball(n: usize, r: f64) -> Result<Self> {
        RadialProfile::new(n, Warp::SpaceForm { kappa: -1.0 }, r).map(ModelManifold::HyperbolicBall)
    }

    /// Ball with warp `sn(ρ) = ρ + Σ coeffs[k] ρ^(2k+3)`.
    pub fn radial_custom(n: usize, r: f64, coeffs: &[f64]) -> Result<Self> {
        RadialProfile::new(n, Warp::OddPolynomial { coeffs: coeffs.to_vec() }, r)
            .map(ModelManifold::RadialCustom)
    }

    pub fn kind(&self) -> ManifoldKind {
        match self {
            ModelManifold::Interval(_) => ManifoldKind::Interval,
            ModelManifold::Box(_) => ManifoldKind::Box,
            ModelManifold::SpaceFormBall(_) => ManifoldKind::SpaceFormBall,
            ModelManifold::SphericalCap(_) => ManifoldKind::SphericalCap,
            ModelManifold::HyperbolicBall(_) => ManifoldKind::HyperbolicBall,
            ModelManifold::RadialCustom(_) => ManifoldKind::RadialCustom,
            ModelManifold::Product(_) => ManifoldKind::Product,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ModelManifold::Interval(_) => 1,
            ModelManifold::Box(sides) => sides.len(),
            ModelManifold::Product(fs) => fs.iter().map(ModelManifold::dim).sum(),
            _ => self.profile().map(RadialProfile::dim).unwrap_or(0),
        }
    }

    pub fn profile(&self) -> Option<&RadialProfile> {
        match self {
            ModelManifold::SpaceFormBall(p)
            | ModelManifold::SphericalCap(p)
            | ModelManifold::HyperbolicBall(p)
            | ModelManifold::RadialCustom(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_radial(&self) -> bool {
        self.profile().is_some()
    }

    /// Product factors; a box expands to its intervals `[0, sᵢ]`.
    pub fn factors(&self) -> Option<Vec<ModelManifold>> {
        match self {
            ModelManifold::Product(fs) => Some(fs.clone()),
            ModelManifold::Box(sides) => Some(
                sides
                    .iter()
                    .map(|&s| ModelManifold::Interval(Interval { a: 0.0, b: s }))
                    .collect(),
            ),
            _ => None,
        }
    }

    /// Scalar curvature when it is constant over the manifold.
    pub fn constant_scalar_curvature(&self) -> Option<f64> {
        match self {
            ModelManifold::Interval(_) | ModelManifold::Box(_) => Some(0.0),
            ModelManifold::Product(fs) => fs.iter().map(|f| f.constant_scalar_curvature()).sum(),
            _ => {
                let p = self.profile()?;
                let kappa = p.kappa()?;
                let n = p.dim() as f64;
                Some(n * (n - 1.0) * kappa)
            }
        }
    }

    /// Same geometry with a new outer radius (radial kinds only).
    pub fn with_radius(&self, r: f64) -> Result<Self> {
        let wrap = |p: RadialProfile| match self {
            ModelManifold::SpaceFormBall(_) => ModelManifold::SpaceFormBall(p),
            ModelManifold::SphericalCap(_) => ModelManifold::SphericalCap(p),
            ModelManifold::HyperbolicBall(_) => ModelManifold::HyperbolicBall(p),
            _ => ModelManifold::RadialCustom(p),
        };
        match self.profile() {
            Some(p) => p.with_radius(r).map(wrap),
            None => Err(crate::error::Error::InvalidKind(format!(
                "{:?} has no radial profile",
                self.kind()
            ))),
        }
    }
}
