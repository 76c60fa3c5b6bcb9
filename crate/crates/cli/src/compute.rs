//! The `compute` command: one report per manifold.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use scx_core::bessel::flat_ball_sc;
use scx_core::comparison::hyperbolic_c;
use scx_core::spectral::{lambda1_beta_with, SolveOptions};
use scx_core::variational::maximize;
use scx_core::{Error, ModelManifold};
use serde::Serialize;

use crate::spec::{render, ManifoldSpec};
use crate::{sig6, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Eigensolve,
    ClosedForm,
    Variational,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Eigensolve => "eigensolve",
            Method::ClosedForm => "closed_form",
            Method::Variational => "variational",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComputeOptions {
    pub grid: usize,
    pub beta: f64,
    pub tol: f64,
    pub trials: usize,
    pub seed: u64,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        Self {
            grid: scx_core::spectral::DEFAULT_GRID,
            beta: 0.25,
            tol: scx_core::spectral::DEFAULT_TOL,
            trials: 200,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComputeReport {
    pub manifold: String,
    pub method: Method,
    /// `4 λ₁`; the stabilized curvature when `beta = 1/4`.
    pub sc_stab: f64,
    pub lambda1: f64,
    pub beta: f64,
    pub grid: Option<usize>,
    pub certificate: Option<f64>,
    pub richardson_estimate: Option<f64>,
    pub diagnostics: BTreeMap<String, f64>,
}

impl ComputeReport {
    pub fn text(&self) -> String {
        let mut s = format!(
            "{}  method={}  sc_stab={}  lambda1={}",
            self.manifold,
            self.method.name(),
            sig6(self.sc_stab),
            sig6(self.lambda1)
        );
        if let Some(g) = self.grid {
            s.push_str(&format!("  grid={g}"));
        }
        if let Some(c) = self.certificate {
            s.push_str(&format!("  certificate={}", sig6(c)));
        }
        for (k, v) in &self.diagnostics {
            s.push_str(&format!("  {k}={}", sig6(*v)));
        }
        s
    }
}

/// Closed-form `Sc⋊` where one is known: intervals and boxes, flat balls,
/// hemispheres of any curvature, hyperbolic 3-balls, and products of these.
pub fn closed_form(man: &ModelManifold) -> Result<f64, CliError> {
    let none = || {
        CliError::Core(Error::InvalidKind(format!(
            "no closed form for {}",
            render(man)
        )))
    };
    match man {
        ModelManifold::Interval(iv) => Ok(4.0 * PI * PI / (iv.length() * iv.length())),
        ModelManifold::Box(_) | ModelManifold::Product(_) => man
            .factors()
            .expect("products have factors")
            .iter()
            .map(closed_form)
            .sum(),
        _ => {
            let p = man.profile().expect("remaining kinds are radial");
            let kappa = p.kappa().ok_or_else(none)?;
            let (n, r) = (p.dim(), p.r_max());
            let nf = n as f64;
            if kappa == 0.0 {
                Ok(flat_ball_sc(n, r)?)
            } else if kappa > 0.0 && (r * kappa.sqrt() - FRAC_PI_2).abs() < 1e-12 {
                Ok(kappa * nf * (nf + 3.0))
            } else if kappa < 0.0 && n == 3 {
                // u = v / sinh: λ₁ = |κ| + π²/r², σ = 6κ
                Ok(4.0 * (-kappa + PI * PI / (r * r)) + 6.0 * kappa)
            } else {
                Err(none())
            }
        }
    }
}

pub fn compute(spec: &ManifoldSpec, method: Method, o: &ComputeOptions) -> Result<ComputeReport, CliError> {
    let man = &spec.manifold;
    let mut diagnostics = BTreeMap::new();
    let mut report = ComputeReport {
        manifold: render(man),
        method,
        sc_stab: f64::NAN,
        lambda1: f64::NAN,
        beta: o.beta,
        grid: None,
        certificate: None,
        richardson_estimate: None,
        diagnostics: BTreeMap::new(),
    };
    match method {
        Method::Eigensolve => {
            let opts = SolveOptions {
                grid: o.grid,
                tol: o.tol,
            };
            let r = lambda1_beta_with(man, o.beta, &opts)?;
            report.sc_stab = r.sc_stab;
            report.lambda1 = r.lambda1;
            report.grid = Some(r.grid_size);
            report.certificate = r.certificate;
            report.richardson_estimate = r.richardson_estimate;
            if o.beta == 0.25 {
                if let Ok(cf) = closed_form(man) {
                    diagnostics.insert("closed_form".into(), cf);
                    diagnostics.insert("deviation".into(), (r.sc_stab - cf).abs());
                }
            }
        }
        Method::ClosedForm => {
            if o.beta != 0.25 {
                return Err(CliError::Usage("closed forms are for beta = 0.25 only".into()));
            }
            let cf = closed_form(man)?;
            report.sc_stab = cf;
            report.lambda1 = cf / 4.0;
        }
        Method::Variational => {
            if o.beta != 0.25 {
                return Err(CliError::Usage("the variational route is for beta = 0.25 only".into()));
            }
            let v = maximize(man, o.trials, o.seed, o.grid)?;
            report.sc_stab = v.best_value;
            report.lambda1 = v.best_value / 4.0;
            report.grid = Some(o.grid);
            diagnostics.insert("eigen_value".into(), v.eigen_value);
            diagnostics.insert("gap".into(), v.gap);
            diagnostics.insert("trials".into(), v.trials as f64);
        }
    }
    if let ModelManifold::HyperbolicBall(p) = man {
        diagnostics.insert("c_r".into(), hyperbolic_c(p.dim(), p.r_max(), o.grid)?);
    }
    report.diagnostics = diagnostics;
    Ok(report)
}
