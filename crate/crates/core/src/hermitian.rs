//! Dense Hermitian linear algebra.
//!
//! Eigenvalues are always reported in descending order, so `values[0]` is
//! λ_1, the largest. Functions that take a 1-based index `i` follow the
//! same convention.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rng;

pub type CMatrix = DMatrix<Complex64>;

/// Relative symmetry tolerance accepted by [`HermitianMatrix::new`].
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Positivity threshold factor used by [`solve_gep`]: the smallest eigenvalue
/// of the weight must exceed `dim * GEP_POSITIVITY * ||B||`.
pub const GEP_POSITIVITY: f64 = 1e-14;

/// A square complex matrix equal to its conjugate transpose.
///
/// Construction checks the symmetry within [`HERMITIAN_TOL`] relative to the
/// largest entry and then stores the exact Hermitian part `(M + M†)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
        }
        if m.nrows() == 0 {
            return Err(Error::Empty);
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("Hermitian matrix"));
        }
        let largest = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let tolerance = HERMITIAN_TOL * largest;
        let n = m.nrows();
        let mut asymmetry: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                asymmetry = asymmetry.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        if asymmetry > tolerance {
            return Err(Error::NonHermitianInput { asymmetry, tolerance });
        }
        Ok(Self::hermitian_part(m))
    }

    /// Takes the Hermitian part without checking. For products that are
    /// Hermitian in exact arithmetic (`X† M X`, sums of Hermitian terms).
    pub(crate) fn hermitian_part(m: CMatrix) -> Self {
        let sym = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        HermitianMatrix(sym)
    }

    pub fn from_real(m: DMatrix<f64>) -> Result<Self> {
        Self::new(m.map(|x| Complex64::new(x, 0.0)))
    }

    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare { rows: n, cols: rows.first().map_or(0, |r| r.len()) });
        }
        Self::from_real(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("diagonal"));
        }
        let n = values.len();
        Ok(HermitianMatrix(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(values[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })))
    }

    pub fn identity(n: usize) -> Self {
        HermitianMatrix(CMatrix::identity(n, n))
    }

    pub fn zeros(n: usize) -> Self {
        HermitianMatrix(CMatrix::zeros(n, n))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(HermitianMatrix(&self.0 + &other.0))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(HermitianMatrix(&self.0 - &other.0))
    }

    pub fn scale(&self, c: f64) -> Self {
        HermitianMatrix(&self.0 * Complex64::new(c, 0.0))
    }

    /// `self - t * other`, the pencil `δA - t δB` that appears in every bound.
    pub fn shifted_by(&self, t: f64, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(HermitianMatrix(&self.0 - &other.0 * Complex64::new(t, 0.0)))
    }

    /// `X† self X`.
    pub fn congruence(&self, x: &CMatrix) -> Result<Self> {
        if x.nrows() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "congruence by {}x{} matrix of a {}x{} matrix",
                x.nrows(),
                x.ncols(),
                self.dim(),
                self.dim()
            )));
        }
        if x.ncols() == 0 {
            return Err(Error::Empty);
        }
        Ok(Self::hermitian_part(x.adjoint() * &self.0 * x))
    }

    /// Leading `k`×`k` principal submatrix.
    pub fn leading(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.dim() {
            return Err(Error::IndexOutOfRange { index: k, len: self.dim() });
        }
        Ok(HermitianMatrix(self.0.view((0, 0), (k, k)).into_owned()))
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.dim(), other.dim())));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Non-increasing.
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector for `values[k]`.
    pub vectors: CMatrix,
}

impl EigenDecomposition {
    /// λ_i, 1-based.
    pub fn lambda(&self, i: usize) -> Result<f64> {
        index_1(i, self.values.len()).map(|k| self.values[k])
    }

    pub fn largest(&self) -> f64 {
        self.values[0]
    }

    pub fn smallest(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Operator 2-norm of the decomposed matrix.
    pub fn norm(&self) -> f64 {
        self.largest().abs().max(self.smallest().abs())
    }

    /// The first `k` eigenvectors as columns.
    pub fn leading_vectors(&self, k: usize) -> CMatrix {
        self.vectors.columns(0, k).into_owned()
    }
}

fn index_1(i: usize, len: usize) -> Result<usize> {
    if i == 0 || i > len {
        Err(Error::IndexOutOfRange { index: i, len })
    } else {
        Ok(i - 1)
    }
}

/// Permutation sorting `values` in descending order; stable for ties.
fn descending_order(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    order
}

fn is_diagonal(m: &CMatrix) -> bool {
    (0..m.ncols()).all(|j| (0..m.nrows()).all(|i| i == j || m[(i, j)] == Complex64::new(0.0, 0.0)))
}

/// Eigendecomposition with values in descending order. Diagonal input is
/// returned exactly, without iteration.
pub fn eigh(m: &HermitianMatrix) -> Result<EigenDecomposition> {
    let n = m.dim();
    let (raw, basis): (Vec<f64>, CMatrix) = if is_diagonal(m.matrix()) {
        (m.matrix().diagonal().iter().map(|z| z.re).collect(), CMatrix::identity(n, n))
    } else {
        let eig = SymmetricEigen::try_new(m.matrix().clone(), f64::EPSILON, 0).ok_or(Error::NoConvergence)?;
        (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
    };
    let order = descending_order(&raw);
    let values = order.iter().map(|&k| raw[k]).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| basis[(i, order[j])]);
    Ok(EigenDecomposition { values, vectors })
}

pub fn eigvalsh(m: &HermitianMatrix) -> Result<Vec<f64>> {
    eigh(m).map(|e| e.values)
}

/// λ_i(M), the i-th largest eigenvalue (1-based).
pub fn lambda(m: &HermitianMatrix, i: usize) -> Result<f64> {
    index_1(i, m.dim())?;
    eigh(m)?.lambda(i)
}

pub fn spectral_norm(m: &HermitianMatrix) -> Result<f64> {
    eigh(m).map(|e| e.norm())
}

/// Solution of `A b = λ B b`.
#[derive(Debug, Clone)]
pub struct GepSolution {
    /// Generalized eigenvalues λ̃, non-increasing.
    pub values: Vec<f64>,
    /// B-orthonormal generalized eigenvectors, column `k` paired with `values[k]`.
    pub vectors: CMatrix,
}

impl GepSolution {
    pub fn empty() -> Self {
        GepSolution { values: Vec::new(), vectors: CMatrix::zeros(0, 0) }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Solves the Hermitian-definite pencil `[A, B]` by whitening with `B^{-1/2}`
/// taken from the eigendecomposition of `B`.
pub fn solve_gep(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<GepSolution> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch(format!("A is {n}x{n}, B is {}x{}", b.dim(), b.dim())));
    }
    let eb = eigh(b)?;
    let smallest = eb.smallest();
    let threshold = n as f64 * GEP_POSITIVITY * eb.norm();
    if !(smallest > threshold) {
        return Err(Error::IndefiniteWeight { smallest, threshold });
    }
    // W = Q diag(mu^{-1/2}), so W† B W = I
    let mut w = eb.vectors.clone();
    for (j, &mu) in eb.values.iter().enumerate() {
        let s = Complex64::new(mu.sqrt().recip(), 0.0);
        for i in 0..n {
            w[(i, j)] *= s;
        }
    }
    let whitened = a.congruence(&w)?;
    let ec = eigh(&whitened)?;
    let vectors = w * ec.vectors;
    Ok(GepSolution { values: ec.values, vectors })
}

/// λ*_min(M) = min(λ_dim(M), 0).
pub fn lambda_star_min(m: &HermitianMatrix) -> Result<f64> {
    Ok(eigh(m)?.smallest().min(0.0))
}

/// λ*_max(M) = max(λ_1(M), 0).
pub fn lambda_star_max(m: &HermitianMatrix) -> Result<f64> {
    Ok(eigh(m)?.largest().max(0.0))
}

/// Outcome of evaluating both Weyl chains for one index pair.
///
/// A side is `None` when its index falls outside `1..=dim` and the term is
/// omitted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylCheck {
    /// λ_{i+j-dim}(A+B) >= λ_i(A) + λ_j(B)
    pub left: Option<bool>,
    /// λ_i(A) + λ_j(B) >= λ_{i+j-1}(A+B)
    pub right: Option<bool>,
}

impl WeylCheck {
    pub fn holds(&self) -> bool {
        self.left.unwrap_or(true) && self.right.unwrap_or(true)
    }
}

pub const WEYL_TOL: f64 = 1e-10;

pub fn check_weyl(a: &HermitianMatrix, b: &HermitianMatrix, i: usize, j: usize) -> Result<WeylCheck> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch(format!("{n} vs {}", b.dim())));
    }
    index_1(i, n)?;
    index_1(j, n)?;
    let ea = eigvalsh(a)?;
    let eb = eigvalsh(b)?;
    let es = eigvalsh(&a.add(b)?)?;
    Ok(weyl_from_spectra(&ea, &eb, &es, i, j))
}

/// Weyl check on precomputed descending spectra of A, B and A+B.
pub fn weyl_from_spectra(ea: &[f64], eb: &[f64], es: &[f64], i: usize, j: usize) -> WeylCheck {
    let n = ea.len();
    let scale = [ea, eb, es]
        .iter()
        .flat_map(|s| s.iter())
        .fold(1.0_f64, |acc, v| acc.max(v.abs()));
    let slack = WEYL_TOL * scale;
    let mid = ea[i - 1] + eb[j - 1];
    let left = (i + j > n).then(|| es[i + j - n - 1] >= mid - slack);
    let right = (i + j - 1 <= n).then(|| mid >= es[i + j - 2] - slack);
    WeylCheck { left, right }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CourantFischerReport {
    /// λ_n(M)
    pub eigenvalue: f64,
    /// Minimum Rayleigh quotient over the span of the top `n` eigenvectors.
    pub achieved: f64,
    /// Largest minimum Rayleigh quotient over the sampled `n`-dimensional subspaces.
    pub sampled_max: f64,
    pub scale: f64,
}

impl CourantFischerReport {
    pub fn within_bound(&self, tol: f64) -> bool {
        self.sampled_max <= self.achieved + tol * self.scale
    }
}

/// Minimum of the Rayleigh quotient over `span(Q)` for orthonormal `Q`.
fn min_rayleigh(m: &HermitianMatrix, q: &CMatrix) -> Result<f64> {
    Ok(eigh(&m.congruence(q)?)?.smallest())
}

/// Witness for the max-min characterisation of λ_n(M): the eigenvector
/// subspace attains λ_n and no random subspace beats it.
pub fn courant_fischer_witness(
    m: &HermitianMatrix,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<CourantFischerReport> {
    let dim = m.dim();
    index_1(n, dim)?;
    let e = eigh(m)?;
    let achieved = min_rayleigh(m, &e.leading_vectors(n))?;
    let mut rng = rng::stream(seed, "courant-fischer");
    let mut sampled_max = f64::NEG_INFINITY;
    for _ in 0..trials {
        let q = rng::orthonormal_columns(&mut rng, dim, n);
        sampled_max = sampled_max.max(min_rayleigh(m, &q)?);
    }
    Ok(CourantFischerReport {
        eigenvalue: e.values[n - 1],
        achieved,
        sampled_max,
        scale: e.norm().max(1.0),
    })
}
