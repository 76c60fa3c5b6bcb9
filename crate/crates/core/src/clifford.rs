//! Clifford representations and the curvature term of a twisted Dirac operator.
//!
//! Generators are anti-Hermitian with `eᵢeⱼ + eⱼeᵢ = -2δᵢⱼ`. Bundle curvature
//! `R_{ij}` is anti-Hermitian (unitary connection), which makes
//! `K = ½ Σ_{i,j} (eᵢeⱼ) ⊗ R_{ij}` Hermitian.

use alloc::format;
use alloc::vec::Vec;

use nalgebra::{Complex, DMatrix};
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::error::{invalid, numerical, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

/// Largest tangent dimension accepted by [`build_clifford`].
pub const MAX_CLIFFORD_DIM: usize = 8;

/// Allowed `‖K - K*‖` before the assembly is declared broken.
const HERMITIAN_TOL: f64 = 1e-10;

fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
}

fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
}

fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])
}

fn kron_all(factors: &[CMatrix]) -> CMatrix {
    factors
        .iter()
        .fold(CMatrix::identity(1, 1), |acc, f| acc.kronecker(f))
}

/// Largest entry modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| {
            let d = x - y;
            d.re.hypot(d.im)
        })
        .fold(0.0, f64::max)
}

/// Complex representation of the Clifford algebra of `ℝᵐ` on `2^⌊m/2⌋` spinors.
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordRep {
    m: usize,
    gammas: Vec<CMatrix>,
}

impl CliffordRep {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn spinor_dim(&self) -> usize {
        1 << (self.m / 2)
    }

    pub fn gammas(&self) -> &[CMatrix] {
        &self.gammas
    }

    /// `U eᵢ U*` for a unitary `U`.
    pub fn conjugate(&self, u: &CMatrix) -> Result<Self> {
        let d = self.spinor_dim();
        if u.nrows() != d || u.ncols() != d {
            return Err(invalid(format!("conjugating matrix must be {d}x{d}")));
        }
        if max_abs_diff(&(u * u.adjoint()), &CMatrix::identity(d, d)) > 1e-12 {
            return Err(invalid("conjugating matrix is not unitary"));
        }
        let gammas = self.gammas.iter().map(|g| u * g * u.adjoint()).collect();
        Ok(Self { m: self.m, gammas })
    }
}

/// Jordan–Wigner construction: `i·(Z⊗…⊗Z⊗X⊗1…)`, `i·(Z⊗…⊗Z⊗Y⊗1…)`, and
/// `i·(Z⊗…⊗Z)` as the last generator when `m` is odd.
pub fn build_clifford(m: usize) -> Result<CliffordRep> {
    if !(1..=MAX_CLIFFORD_DIM).contains(&m) {
        return Err(invalid(format!(
            "tangent dimension must be in 1..={MAX_CLIFFORD_DIM}, got {m}"
        )));
    }
    let k = m / 2;
    let id = CMatrix::identity(2, 2);
    let mut gammas = Vec::with_capacity(m);
    for j in 0..k {
        for p in [pauli_x(), pauli_y()] {
            let factors: Vec<CMatrix> = (0..k)
                .map(|l| match l.cmp(&j) {
                    core::cmp::Ordering::Less => pauli_z(),
                    core::cmp::Ordering::Equal => p.clone(),
                    core::cmp::Ordering::Greater => id.clone(),
                })
                .collect();
            gammas.push(kron_all(&factors) * c(0.0, 1.0));
        }
    }
    if m % 2 == 1 {
        let factors: Vec<CMatrix> = (0..k).map(|_| pauli_z()).collect();
        gammas.push(kron_all(&factors) * c(0.0, 1.0));
    }
    Ok(CliffordRep { m, gammas })
}

/// Curvature `R_{ij}` of a unitary connection on a `fiber_dim` bundle.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureData {
    m: usize,
    fiber_dim: usize,
    /// Row-major `m × m` table.
    r: Vec<CMatrix>,
}

impl CurvatureData {
    /// Builds the table from the `i < j` entries in lexicographic order.
    pub fn from_upper(m: usize, fiber_dim: usize, upper: Vec<CMatrix>) -> Result<Self> {
        if m == 0 || fiber_dim == 0 {
            return Err(invalid("curvature data needs m >= 1 and fiber_dim >= 1"));
        }
        let pairs = m * (m - 1) / 2;
        if upper.len() != pairs {
            return Err(invalid(format!(
                "expected {pairs} curvature matrices for m = {m}, got {}",
                upper.len()
            )));
        }
        let zero = CMatrix::zeros(fiber_dim, fiber_dim);
        let mut r = alloc::vec![zero; m * m];
        let mut it = upper.into_iter();
        for i in 0..m {
            for j in i + 1..m {
                let a = it.next().expect("length checked above");
                if a.nrows() != fiber_dim || a.ncols() != fiber_dim {
                    return Err(invalid(format!(
                        "R_{i}{j} must be {fiber_dim}x{fiber_dim}"
                    )));
                }
                if max_abs_diff(&a, &(-a.adjoint())) > 1e-12 {
                    return Err(invalid(format!("R_{i}{j} is not anti-Hermitian")));
                }
                r[j * m + i] = -a.clone();
                r[i * m + j] = a;
            }
        }
        Ok(Self { m, fiber_dim, r })
    }

    /// Flat bundle of rank `fiber_dim`.
    pub fn flat(m: usize, fiber_dim: usize) -> Result<Self> {
        let pairs = m * m.saturating_sub(1) / 2;
        Self::from_upper(m, fiber_dim, alloc::vec![CMatrix::zeros(fiber_dim, fiber_dim); pairs])
    }

    /// Line bundle with `R_{ij} = i·f_{ij}` for the upper entries `f`.
    pub fn line_bundle(m: usize, f: &[f64]) -> Result<Self> {
        let upper = f
            .iter()
            .map(|&x| CMatrix::from_element(1, 1, c(0.0, x)))
            .collect();
        Self::from_upper(m, 1, upper)
    }

    /// Random anti-Hermitian entries with real and imaginary parts in `[-1, 1]`.
    pub fn random<R: Rng>(m: usize, fiber_dim: usize, rng: &mut R) -> Result<Self> {
        let pairs = m * m.saturating_sub(1) / 2;
        let upper = (0..pairs)
            .map(|_| {
                let b = CMatrix::from_fn(fiber_dim, fiber_dim, |_, _| {
                    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                });
                (&b - b.adjoint()) * c(0.5, 0.0)
            })
            .collect();
        Self::from_upper(m, fiber_dim, upper)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    pub fn get(&self, i: usize, j: usize) -> &CMatrix {
        &self.r[i * self.m + j]
    }
}

/// `R^{V₁⊗V₂} = R¹ ⊗ 1 + 1 ⊗ R²`.
pub fn tensor_curvature(d1: &CurvatureData, d2: &CurvatureData) -> Result<CurvatureData> {
    if d1.m != d2.m {
        return Err(invalid(format!(
            "tangent dimensions differ: {} and {}",
            d1.m, d2.m
        )));
    }
    let id1 = CMatrix::identity(d1.fiber_dim, d1.fiber_dim);
    let id2 = CMatrix::identity(d2.fiber_dim, d2.fiber_dim);
    let r = d1
        .r
        .iter()
        .zip(&d2.r)
        .map(|(a, b)| a.kronecker(&id2) + id1.kronecker(b))
        .collect();
    Ok(CurvatureData {
        m: d1.m,
        fiber_dim: d1.fiber_dim * d2.fiber_dim,
        r,
    })
}

/// Hermitian curvature endomorphism with its spectrum in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureEndomorphism {
    pub matrix: CMatrix,
    pub eigenvalues: Vec<f64>,
    pub lambda_min: f64,
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_spectrum(a: &CMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = a.clone().symmetric_eigenvalues().iter().cloned().collect();
    ev.sort_by(|x, y| x.total_cmp(y));
    ev
}

fn assemble(rep: &CliffordRep, data: &CurvatureData, extra: usize) -> Result<CurvatureEndomorphism> {
    if rep.m != data.m {
        return Err(invalid(format!(
            "Clifford dimension {} does not match curvature dimension {}",
            rep.m, data.m
        )));
    }
    let ident = CMatrix::identity(extra, extra);
    let n = rep.spinor_dim() * data.fiber_dim * extra;
    let mut k = CMatrix::zeros(n, n);
    for i in 0..rep.m {
        for j in 0..rep.m {
            let ee = &rep.gammas[i] * &rep.gammas[j];
            k += ee.kronecker(data.get(i, j)).kronecker(&ident) * c(0.5, 0.0);
        }
    }
    let asym = max_abs_diff(&k, &k.adjoint());
    if asym > HERMITIAN_TOL {
        return Err(numerical("curvature endomorphism is not Hermitian", asym));
    }
    let eigenvalues = hermitian_spectrum(&k);
    Ok(CurvatureEndomorphism {
        lambda_min: eigenvalues[0],
        matrix: k,
        eigenvalues,
    })
}

/// `K = ½ Σ_{i,j} (eᵢeⱼ) ⊗ R_{ij}` on `S ⊗ V`.
pub fn curvature_endomorphism(rep: &CliffordRep, data: &CurvatureData) -> Result<CurvatureEndomorphism> {
    assemble(rep, data, 1)
}

/// `½ Σ_{i,j} (eᵢeⱼ) ⊗ R_{ij} ⊗ 1` on `S ⊗ V ⊗ ℂ^extra`.
pub fn partial_endomorphism(
    rep: &CliffordRep,
    data: &CurvatureData,
    extra: usize,
) -> Result<CurvatureEndomorphism> {
    if extra == 0 {
        return Err(invalid("the trivial factor needs dimension >= 1"));
    }
    assemble(rep, data, extra)
}

/// One random instance of the tensor-product lower bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdditivityInstance {
    pub m: usize,
    pub dims: (usize, usize),
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda12: f64,
}

impl AdditivityInstance {
    /// `λ₁₂ - (λ₁ + λ₂)`, nonnegative when the lower bound holds.
    pub fn gap(&self) -> f64 {
        self.lambda12 - (self.lambda1 + self.lambda2)
    }
}

/// Random bundles with `m ∈ {2, 3, 4}` and fiber dimensions in `1..=4`.
pub fn additivity_instance<R: Rng>(rng: &mut R) -> Result<AdditivityInstance> {
    let m = rng.gen_range(2..=4);
    let d1 = rng.gen_range(1..=4);
    let d2 = rng.gen_range(1..=4);
    let rep = build_clifford(m)?;
    let v1 = CurvatureData::random(m, d1, rng)?;
    let v2 = CurvatureData::random(m, d2, rng)?;
    let v12 = tensor_curvature(&v1, &v2)?;
    Ok(AdditivityInstance {
        m,
        dims: (d1, d2),
        lambda1: curvature_endomorphism(&rep, &v1)?.lambda_min,
        lambda2: curvature_endomorphism(&rep, &v2)?.lambda_min,
        lambda12: curvature_endomorphism(&rep, &v12)?.lambda_min,
    })
}
