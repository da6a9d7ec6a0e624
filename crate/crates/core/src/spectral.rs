//! Discrete spectral models, trial maps and the noise error measure.
//!
//! The operator is stored in its own eigenbasis, `H = diag(atoms)`, so the
//! spectral projector onto a Borel set `I` is the 0/1 diagonal selecting the
//! atoms that lie in `I`. A trial map `V` is an `n`×`M` coefficient matrix
//! over that basis; rows belonging to the target subspace carry the signal
//! `S = P_E V`, all other rows carry the noise `N = P_E⊥ V`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::borel::BorelSet;
use crate::error::{Error, Result};
use crate::hermitian::{self, CMatrix, GepSolution, HermitianMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSpectralModel {
    atoms: Vec<f64>,
}

impl DiscreteSpectralModel {
    pub fn new(atoms: Vec<f64>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Empty);
        }
        if atoms.iter().any(|a| !a.is_finite()) {
            return Err(Error::NonFinite("atoms"));
        }
        Ok(DiscreteSpectralModel { atoms })
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    pub fn dim(&self) -> usize {
        self.atoms.len()
    }

    pub fn max_abs_atom(&self) -> f64 {
        self.atoms.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    pub fn operator(&self) -> HermitianMatrix {
        HermitianMatrix::diagonal(&self.atoms).expect("atoms validated at construction")
    }

    /// Diagonal of the spectral projector onto `set`.
    pub fn projector_mask(&self, set: &BorelSet) -> Vec<bool> {
        self.atoms.iter().map(|&a| set.contains(a)).collect()
    }
}

/// How the target subspace is selected: explicit atom indices (0-based) or
/// all atoms in a closed interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Selection {
    Indices(Vec<usize>),
    Interval([f64; 2]),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSubspace {
    selection: Selection,
}

impl SpectralSubspace {
    pub fn from_indices(mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSubspace("duplicate indices".into()));
        }
        Ok(SpectralSubspace { selection: Selection::Indices(indices) })
    }

    pub fn band(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || a > b {
            return Err(Error::InvalidInterval(format!("[{a}, {b}]")));
        }
        Ok(SpectralSubspace { selection: Selection::Interval([a, b]) })
    }

    pub fn from_selection(selection: Selection) -> Result<Self> {
        match selection {
            Selection::Indices(i) => Self::from_indices(i),
            Selection::Interval([a, b]) => Self::band(a, b),
        }
    }

    pub fn selection(&self) -> &Selection {
        &self.selection
    }

    /// The band `[a, b]` when the subspace was given in interval form.
    pub fn interval(&self) -> Option<(f64, f64)> {
        match self.selection {
            Selection::Interval([a, b]) => Some((a, b)),
            Selection::Indices(_) => None,
        }
    }

    /// Selected atom indices, ascending.
    pub fn indices(&self, model: &DiscreteSpectralModel) -> Result<Vec<usize>> {
        match &self.selection {
            Selection::Indices(idx) => {
                if let Some(&bad) = idx.iter().find(|&&k| k >= model.dim()) {
                    return Err(Error::InvalidSubspace(format!(
                        "index {bad} out of range for {} atoms",
                        model.dim()
                    )));
                }
                Ok(idx.clone())
            }
            Selection::Interval([a, b]) => Ok(model
                .atoms()
                .iter()
                .enumerate()
                .filter(|(_, &l)| *a <= l && l <= *b)
                .map(|(k, _)| k)
                .collect()),
        }
    }

    pub fn mask(&self, model: &DiscreteSpectralModel) -> Result<Vec<bool>> {
        let mut mask = vec![false; model.dim()];
        for k in self.indices(model)? {
            mask[k] = true;
        }
        Ok(mask)
    }

    /// m* = dim E.
    pub fn dim(&self, model: &DiscreteSpectralModel) -> Result<usize> {
        self.indices(model).map(|i| i.len())
    }
}

/// Columns are the trial vectors, expressed in the model eigenbasis.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialMap {
    coefficients: CMatrix,
}

impl TrialMap {
    pub fn new(coefficients: CMatrix) -> Result<Self> {
        if coefficients.nrows() == 0 || coefficients.ncols() == 0 {
            return Err(Error::Empty);
        }
        if coefficients.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("trial map"));
        }
        Ok(TrialMap { coefficients })
    }

    pub fn coefficients(&self) -> &CMatrix {
        &self.coefficients
    }

    /// Number of atoms `n`.
    pub fn rows(&self) -> usize {
        self.coefficients.nrows()
    }

    /// Trial dimension `M`.
    pub fn trial_dim(&self) -> usize {
        self.coefficients.ncols()
    }

    /// Σ_j |V[k][j]|²
    pub fn row_mass(&self, k: usize) -> f64 {
        self.coefficients.row(k).iter().map(|z| z.norm_sqr()).sum()
    }

    /// `V·U`
    pub fn compose(&self, u: &CMatrix) -> Result<TrialMap> {
        if u.nrows() != self.trial_dim() {
            return Err(Error::DimensionMismatch(format!(
                "trial map has {} columns, basis has {} rows",
                self.trial_dim(),
                u.nrows()
            )));
        }
        TrialMap::new(&self.coefficients * u)
    }

    /// First `k` columns.
    pub fn leading(&self, k: usize) -> Result<TrialMap> {
        if k == 0 || k > self.trial_dim() {
            return Err(Error::IndexOutOfRange { index: k, len: self.trial_dim() });
        }
        TrialMap::new(self.coefficients.columns(0, k).into_owned())
    }

    fn masked(&self, keep: impl Fn(usize) -> bool) -> CMatrix {
        let mut c = self.coefficients.clone();
        for k in 0..c.nrows() {
            if !keep(k) {
                c.row_mut(k).fill(Complex64::new(0.0, 0.0));
            }
        }
        c
    }
}

fn check_rows(model: &DiscreteSpectralModel, v: &TrialMap) -> Result<()> {
    if v.rows() != model.dim() {
        return Err(Error::DimensionMismatch(format!(
            "trial map has {} rows, model has {} atoms",
            v.rows(),
            model.dim()
        )));
    }
    Ok(())
}

/// `V = S + N` with disjoint row supports.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalNoiseSplit {
    pub signal: CMatrix,
    pub noise: CMatrix,
}

pub fn split(model: &DiscreteSpectralModel, subspace: &SpectralSubspace, v: &TrialMap) -> Result<SignalNoiseSplit> {
    check_rows(model, v)?;
    let mask = subspace.mask(model)?;
    Ok(SignalNoiseSplit { signal: v.masked(|k| mask[k]), noise: v.masked(|k| !mask[k]) })
}

/// Which side of the shift `t` a distance-weighted integral runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// λ > t
    Above,
    /// λ < t
    Below,
}

impl Side {
    pub fn region(self, t: f64) -> BorelSet {
        match self {
            Side::Above => BorelSet::above(t),
            Side::Below => BorelSet::below(t),
        }
    }
}

/// Noise rows (atoms outside the subspace) whose atom lies in `set`.
fn noise_rows_in(
    model: &DiscreteSpectralModel,
    subspace: &SpectralSubspace,
    v: &TrialMap,
    set: &BorelSet,
) -> Result<Vec<usize>> {
    check_rows(model, v)?;
    let mask = subspace.mask(model)?;
    Ok((0..model.dim()).filter(|&k| !mask[k] && set.contains(model.atoms()[k])).collect())
}

/// ε(I) = Tr[N† P(I) N].
pub fn error_measure(
    model: &DiscreteSpectralModel,
    subspace: &SpectralSubspace,
    v: &TrialMap,
    set: &BorelSet,
) -> Result<f64> {
    Ok(noise_rows_in(model, subspace, v, set)?.into_iter().map(|k| v.row_mass(k)).sum())
}

/// Gram matrix `X†X` of the rows `k` of `V` scaled by `sqrt(weight_k)`.
fn weighted_gram(v: &TrialMap, rows: &[(usize, f64)]) -> HermitianMatrix {
    let m = v.trial_dim();
    let mut x = CMatrix::zeros(v.rows(), m);
    for &(k, w) in rows {
        let s = Complex64::new(w.sqrt(), 0.0);
        for j in 0..m {
            x[(k, j)] = v.coefficients()[(k, j)] * s;
        }
    }
    HermitianMatrix::hermitian_part(x.adjoint() * x)
}

/// N† P(I) N, positive semidefinite.
pub fn error_matrix(
    model: &DiscreteSpectralModel,
    subspace: &SpectralSubspace,
    v: &TrialMap,
    set: &BorelSet,
) -> Result<HermitianMatrix> {
    let rows: Vec<(usize, f64)> = noise_rows_in(model, subspace, v, set)?.into_iter().map(|k| (k, 1.0)).collect();
    Ok(weighted_gram(v, &rows))
}

/// ∫_{λ∈region} (λ - t) dε(λ).
pub fn weighted_error_over(
    model: &DiscreteSpectralModel,
    subspace: &SpectralSubspace,
    v: &TrialMap,
    region: &BorelSet,
    t: f64,
) -> Result<f64> {
    Ok(noise_rows_in(model, subspace, v, region)?
        .into_iter()
        .map(|k| (model.atoms()[k] - t) * v.row_mass(k))
        .sum())
}

/// ∫_{λ∈region} (λ - t) d N†P(λ)N. Every atom of `region` must lie on one
/// side of `t`; the result is then PSD (all atoms above) or NSD (all below).
pub fn weighted_error_matrix_over(
    model: &DiscreteSpectralModel,
    subspace: &SpectralSubspace,
    v: &TrialMap,
    region: &BorelSet,
    t: f64,
) -> Result<HermitianMatrix> {
    let rows = noise_rows_in(model, subspace, v, region)?;
    let above: Vec<(usize, f64)> =
        rows.iter().filter(|&&k| model.atoms()[k] > t).map(|&k| (k, model.atoms()[k] - t)).collect();
    let below: Vec<(usize, f64)> =
        rows.iter().filter(|&&k| model.atoms()[k] < t).map(|&k| (k, t - model.atoms()[k])).collect();
    match (above.is_empty(), below.is_empty()) {
        (_, true) => Ok(weighted_gram(v, &above)),
        (true, false) => Ok(weighted_gram(v, &below).scale(-1.0)),
        (false, false) => weighted_gram(v, &above).sub(&weighted_gram(v, &below)),
    }
}

/// ∫_{λ>t} (λ - t) dε ≥ 0 for `Above`, ∫_{λ<t} (λ - t) dε ≤ 0 for `Below`.
pub fn weighted_error_integral(
    model: &DiscreteSpectralModel,
    subspace: &SpectralSubspace,
    v: &TrialMap,
    t: f64,
    side: Side,
) -> Result<f64> {
    weighted_error_over(model, subspace, v, &side.region(t), t)
}

/// Matrix analogue of [`weighted_error_integral`].
pub fn weighted_error_matrix(
    model: &DiscreteSpectralModel,
    subspace: &SpectralSubspace,
    v: &TrialMap,
    t: f64,
    side: Side,
) -> Result<HermitianMatrix> {
    weighted_error_matrix_over(model, subspace, v, &side.region(t), t)
}

/// α(I) = Tr[V† P(I) V], signal and noise rows alike.
pub fn trial_measure_alpha(model: &DiscreteSpectralModel, v: &TrialMap, set: &BorelSet) -> Result<f64> {
    check_rows(model, v)?;
    Ok((0..model.dim()).filter(|&k| set.contains(model.atoms()[k])).map(|k| v.row_mass(k)).sum())
}

/// Everything needed to evaluate the bounds against the exact answer.
#[derive(Debug, Clone)]
pub struct GroundTruth {
    pub model: DiscreteSpectralModel,
    pub subspace: SpectralSubspace,
    pub trial: TrialMap,
    pub delta_a: HermitianMatrix,
    pub delta_b: HermitianMatrix,
}

impl GroundTruth {
    pub fn split(&self) -> Result<SignalNoiseSplit> {
        split(&self.model, &self.subspace, &self.trial)
    }

    pub fn subspace_dim(&self) -> Result<usize> {
        self.subspace.dim(&self.model)
    }

    pub fn assemble(&self) -> Result<GepInstance> {
        assemble_gep(&self.model, &self.trial, &self.delta_a, &self.delta_b, &self.subspace)
    }
}

/// A Hermitian pencil `[A, B]`, optionally with the decomposition it was
/// assembled from.
#[derive(Debug, Clone)]
pub struct GepInstance {
    pub a: HermitianMatrix,
    pub b: HermitianMatrix,
    pub ground_truth: Option<GroundTruth>,
}

impl GepInstance {
    pub fn new(a: HermitianMatrix, b: HermitianMatrix) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch(format!("A is {0}x{0}, B is {1}x{1}", a.dim(), b.dim())));
        }
        Ok(GepInstance { a, b, ground_truth: None })
    }

    /// Trial dimension M.
    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn truth(&self) -> Result<&GroundTruth> {
        self.ground_truth.as_ref().ok_or(Error::MissingGroundTruth)
    }

    pub fn solve(&self) -> Result<GepSolution> {
        hermitian::solve_gep(&self.a, &self.b)
    }

    /// 𝒩^(B) = N†N + δB.
    pub fn noise_weight_b(&self) -> Result<HermitianMatrix> {
        let t = self.truth()?;
        let n = t.split()?.noise;
        HermitianMatrix::hermitian_part(n.adjoint() * n).add(&t.delta_b)
    }

    /// 𝒩^(A) = N†HN + δA.
    pub fn noise_weight_a(&self) -> Result<HermitianMatrix> {
        let t = self.truth()?;
        let n = t.split()?.noise;
        HermitianMatrix::hermitian_part(n.adjoint() * apply_operator(&t.model, &n)).add(&t.delta_a)
    }

    /// S†S.
    pub fn signal_gram(&self) -> Result<HermitianMatrix> {
        let s = self.truth()?.split()?.signal;
        Ok(HermitianMatrix::hermitian_part(s.adjoint() * s))
    }

    /// Congruence `[X†AX, X†BX]`; the ground truth follows as
    /// `V ↦ VX`, `δ ↦ X†δX`.
    pub fn congruence(&self, x: &CMatrix) -> Result<GepInstance> {
        let ground_truth = match &self.ground_truth {
            Some(t) => Some(GroundTruth {
                model: t.model.clone(),
                subspace: t.subspace.clone(),
                trial: t.trial.compose(x)?,
                delta_a: t.delta_a.congruence(x)?,
                delta_b: t.delta_b.congruence(x)?,
            }),
            None => None,
        };
        Ok(GepInstance { a: self.a.congruence(x)?, b: self.b.congruence(x)?, ground_truth })
    }

    /// Largest absolute deviation of `A`, `B` from the ground-truth assembly,
    /// relative to the largest entry.
    pub fn assembly_residual(&self) -> Result<f64> {
        let t = self.truth()?;
        let fresh = assemble_gep(&t.model, &t.trial, &t.delta_a, &t.delta_b, &t.subspace)?;
        let rel = |x: &HermitianMatrix, y: &HermitianMatrix| {
            (x.matrix() - y.matrix()).iter().fold(0.0_f64, |m, z| m.max(z.norm())) / x.max_abs_entry().max(1e-300)
        };
        Ok(rel(&fresh.a, &self.a).max(rel(&fresh.b, &self.b)))
    }
}

/// `H X` for `H = diag(atoms)`.
fn apply_operator(model: &DiscreteSpectralModel, x: &CMatrix) -> CMatrix {
    let mut y = x.clone();
    for (k, &l) in model.atoms().iter().enumerate() {
        y.row_mut(k).scale_mut(l);
    }
    y
}

/// `A = V†HV + δA`, `B = V†V + δB`.
pub fn assemble_gep(
    model: &DiscreteSpectralModel,
    v: &TrialMap,
    delta_a: &HermitianMatrix,
    delta_b: &HermitianMatrix,
    subspace: &SpectralSubspace,
) -> Result<GepInstance> {
    check_rows(model, v)?;
    subspace.indices(model)?;
    let m = v.trial_dim();
    if delta_a.dim() != m || delta_b.dim() != m {
        return Err(Error::DimensionMismatch(format!(
            "trial dimension {m}, δA {0}x{0}, δB {1}x{1}",
            delta_a.dim(),
            delta_b.dim()
        )));
    }
    let c = v.coefficients();
    let a = HermitianMatrix::hermitian_part(c.adjoint() * apply_operator(model, c)).add(delta_a)?;
    let b = HermitianMatrix::hermitian_part(c.adjoint() * c).add(delta_b)?;
    Ok(GepInstance {
        a,
        b,
        ground_truth: Some(GroundTruth {
            model: model.clone(),
            subspace: subspace.clone(),
            trial: v.clone(),
            delta_a: delta_a.clone(),
            delta_b: delta_b.clone(),
        }),
    })
}

/// Real column vector as a one-column trial map.
pub fn column(values: &[f64]) -> Result<TrialMap> {
    TrialMap::new(DMatrix::from_iterator(values.len(), 1, values.iter().map(|&x| Complex64::new(x, 0.0))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use approx::assert_abs_diff_eq;

    /// atoms (0, 1, 10), subspace = {λ = 1}, V = (0.1, 1, 0.2)ᵀ
    fn running() -> (DiscreteSpectralModel, SpectralSubspace, TrialMap) {
        (
            DiscreteSpectralModel::new(vec![0.0, 1.0, 10.0]).unwrap(),
            SpectralSubspace::from_indices(vec![1]).unwrap(),
            column(&[0.1, 1.0, 0.2]).unwrap(),
        )
    }

    fn random_case(seed: u64) -> (DiscreteSpectralModel, SpectralSubspace, TrialMap) {
        use rand::Rng;
        let mut r = rng::stream(seed, "spectral-test");
        let n = 12;
        let atoms: Vec<f64> = (0..n).map(|_| r.random_range(-20.0..20.0)).collect();
        let model = DiscreteSpectralModel::new(atoms).unwrap();
        let sub = SpectralSubspace::from_indices(vec![2, 5, 7]).unwrap();
        let v = TrialMap::new(rng::complex_gaussian(&mut r, n, 4)).unwrap();
        (model, sub, v)
    }

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn split_running_example() {
        let (model, sub, v) = running();
        let s = split(&model, &sub, &v).unwrap();
        assert_eq!(s.signal.column(0).iter().copied().collect::<Vec<_>>(), vec![re(0.0), re(1.0), re(0.0)]);
        assert_eq!(s.noise.column(0).iter().copied().collect::<Vec<_>>(), vec![re(0.1), re(0.0), re(0.2)]);
    }

    #[test]
    fn split_identities_on_random_instance() {
        let (model, sub, v) = random_case(11);
        let s = split(&model, &sub, &v).unwrap();
        assert_eq!(&s.signal + &s.noise, *v.coefficients());
        let cross = s.signal.adjoint() * &s.noise;
        assert!(cross.iter().all(|z| *z == re(0.0)));
    }

    #[test]
    fn perfect_trial_space_has_no_noise() {
        let model = DiscreteSpectralModel::new(vec![0.0, 1.0, 10.0]).unwrap();
        let sub = SpectralSubspace::from_indices(vec![1]).unwrap();
        let v = column(&[0.0, 3.0, 0.0]).unwrap();
        let s = split(&model, &sub, &v).unwrap();
        assert!(s.noise.iter().all(|z| *z == re(0.0)));
        for set in [BorelSet::real_line(), BorelSet::point(10.0), BorelSet::below(0.5)] {
            assert_eq!(error_measure(&model, &sub, &v, &set).unwrap(), 0.0);
        }
    }

    #[test]
    fn error_measure_running_example() {
        let (model, sub, v) = running();
        assert_abs_diff_eq!(error_measure(&model, &sub, &v, &BorelSet::point(10.0)).unwrap(), 0.04, epsilon = 1e-15);
        assert_abs_diff_eq!(error_measure(&model, &sub, &v, &BorelSet::at_most(0.5)).unwrap(), 0.01, epsilon = 1e-15);
        assert_abs_diff_eq!(error_measure(&model, &sub, &v, &BorelSet::real_line()).unwrap(), 0.05, epsilon = 1e-15);
        assert_eq!(error_measure(&model, &sub, &v, &BorelSet::empty()).unwrap(), 0.0);
    }

    #[test]
    fn error_matrix_cases() {
        let (model, sub, v) = running();
        let e = error_matrix(&model, &sub, &v, &BorelSet::point(10.0)).unwrap();
        assert_eq!(e.dim(), 1);
        assert_abs_diff_eq!(e.matrix()[(0, 0)].re, 0.04, epsilon = 1e-15);
        let z = error_matrix(&model, &sub, &v, &BorelSet::closed(2.0, 5.0)).unwrap();
        assert_eq!(*z.matrix(), CMatrix::zeros(1, 1));

        let (model, sub, v) = random_case(5);
        let set = BorelSet::closed(-5.0, 12.0);
        let e = error_matrix(&model, &sub, &v, &set).unwrap();
        let tr: f64 = (0..e.dim()).map(|i| e.matrix()[(i, i)].re).sum();
        assert_abs_diff_eq!(tr, error_measure(&model, &sub, &v, &set).unwrap(), epsilon = 1e-12);
        let full = error_matrix(&model, &sub, &v, &BorelSet::real_line()).unwrap();
        let n = split(&model, &sub, &v).unwrap().noise;
        assert_eq!(*full.matrix(), *HermitianMatrix::hermitian_part(n.adjoint() * &n).matrix());
    }

    #[test]
    fn weighted_integrals_running_example() {
        let (model, sub, v) = running();
        let up = weighted_error_integral(&model, &sub, &v, 1.0, Side::Above).unwrap();
        let down = weighted_error_integral(&model, &sub, &v, 1.0, Side::Below).unwrap();
        assert_abs_diff_eq!(up, 0.36, epsilon = 1e-15);
        assert_abs_diff_eq!(down, -0.01, epsilon = 1e-15);
        let m = weighted_error_matrix(&model, &sub, &v, 1.0, Side::Above).unwrap();
        assert_abs_diff_eq!(m.matrix()[(0, 0)].re, 0.36, epsilon = 1e-15);
        let z = weighted_error_matrix(&model, &sub, &v, 11.0, Side::Above).unwrap();
        assert_eq!(*z.matrix(), CMatrix::zeros(1, 1));
    }

    #[test]
    fn weighted_matrix_trace_and_sign() {
        let (model, sub, v) = random_case(8);
        for t in [-30.0, -3.0, 0.0, 4.5, 30.0] {
            for side in [Side::Above, Side::Below] {
                let m = weighted_error_matrix(&model, &sub, &v, t, side).unwrap();
                let s = weighted_error_integral(&model, &sub, &v, t, side).unwrap();
                let tr: f64 = (0..m.dim()).map(|i| m.matrix()[(i, i)].re).sum();
                assert!((tr - s).abs() <= 1e-12 * s.abs().max(1.0));
                let e = hermitian::eigvalsh(&m).unwrap();
                match side {
                    Side::Above => assert!(s >= 0.0 && *e.last().unwrap() >= -1e-12 * s.abs().max(1.0)),
                    Side::Below => assert!(s <= 0.0 && e[0] <= 1e-12 * s.abs().max(1.0)),
                }
            }
        }
    }

    #[test]
    fn alpha_cases() {
        let model = DiscreteSpectralModel::new(vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        let mut r = rng::stream(2, "alpha");
        let q = rng::orthonormal_columns(&mut r, 4, 2);
        let v = TrialMap::new(q).unwrap();
        assert_abs_diff_eq!(trial_measure_alpha(&model, &v, &BorelSet::real_line()).unwrap(), 2.0, epsilon = 1e-12);
        assert_eq!(trial_measure_alpha(&model, &v, &BorelSet::open(5.0, 6.0)).unwrap(), 0.0);
    }

    #[test]
    fn assemble_running_example() {
        let (model, sub, v) = running();
        let z = HermitianMatrix::zeros(1);
        let inst = assemble_gep(&model, &v, &z, &z, &sub).unwrap();
        assert_abs_diff_eq!(inst.a.matrix()[(0, 0)].re, 1.4, epsilon = 1e-15);
        assert_abs_diff_eq!(inst.b.matrix()[(0, 0)].re, 1.05, epsilon = 1e-15);
        assert_abs_diff_eq!(inst.noise_weight_b().unwrap().matrix()[(0, 0)].re, 0.05, epsilon = 1e-15);
        assert_abs_diff_eq!(inst.noise_weight_a().unwrap().matrix()[(0, 0)].re, 0.4, epsilon = 1e-15);
        assert_eq!(inst.assembly_residual().unwrap(), 0.0);
    }

    #[test]
    fn assemble_orthonormal_signal() {
        let model = DiscreteSpectralModel::new(vec![-1.0, 2.0, 5.0, 7.0]).unwrap();
        let sub = SpectralSubspace::from_indices(vec![1, 3]).unwrap();
        let mut c = CMatrix::zeros(4, 2);
        c[(1, 0)] = re(1.0);
        c[(3, 1)] = re(1.0);
        let v = TrialMap::new(c).unwrap();
        let z = HermitianMatrix::zeros(2);
        let inst = assemble_gep(&model, &v, &z, &z, &sub).unwrap();
        assert_eq!(*inst.a.matrix(), *HermitianMatrix::diagonal(&[2.0, 7.0]).unwrap().matrix());
        assert_eq!(*inst.b.matrix(), CMatrix::identity(2, 2));
        let vals = inst.solve().unwrap().values;
        assert_abs_diff_eq!(vals[0], 7.0, epsilon = 1e-14);
        assert_abs_diff_eq!(vals[1], 2.0, epsilon = 1e-14);
    }

    #[test]
    fn dimension_errors() {
        let (model, sub, _) = running();
        let bad = column(&[1.0, 2.0]).unwrap();
        assert!(matches!(split(&model, &sub, &bad), Err(Error::DimensionMismatch(_))));
        assert!(matches!(
            error_measure(&model, &sub, &bad, &BorelSet::real_line()),
            Err(Error::DimensionMismatch(_))
        ));
        let v = column(&[1.0, 2.0, 3.0]).unwrap();
        let z2 = HermitianMatrix::zeros(2);
        assert!(matches!(assemble_gep(&model, &v, &z2, &z2, &sub), Err(Error::DimensionMismatch(_))));
        let out = SpectralSubspace::from_indices(vec![3]).unwrap();
        assert!(matches!(out.indices(&model), Err(Error::InvalidSubspace(_))));
        assert!(SpectralSubspace::from_indices(vec![1, 1]).is_err());
        assert!(SpectralSubspace::band(2.0, 1.0).is_err());
    }

    #[test]
    fn band_selection_is_closed() {
        let model = DiscreteSpectralModel::new(vec![0.0, 1.0, 10.0]).unwrap();
        let sub = SpectralSubspace::band(0.5, 20.0).unwrap();
        assert_eq!(sub.indices(&model).unwrap(), vec![1, 2]);
        let sub = SpectralSubspace::band(1.0, 1.0).unwrap();
        assert_eq!(sub.indices(&model).unwrap(), vec![1]);
    }
}
