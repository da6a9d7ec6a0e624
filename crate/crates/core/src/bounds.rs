//! Eigenvalue-error bounds for a pencil `[A, B]` with known decomposition.
//!
//! Every family bounds the signed error `λ̃_i - λ_i` between the i-th
//! generalized eigenvalue of `[A, B]` and the i-th eigenvalue of `H` in the
//! target subspace. The numerators combine a distance-weighted noise
//! integral with `λ*_min / λ*_max` of the pencil `δA - t δB`; the
//! denominators are the conditioning margin `λ_m(B) - λ_1(𝒩^(B))` or, for
//! the alternative family, `λ_m(B)` alone.
//!
//! All families assume the trial dimension equals the subspace dimension.
//! Instances with more trial vectors have to be refined first (see
//! [`crate::protocol::refine`]).

use serde::{Deserialize, Serialize};

use crate::borel::BorelSet;
use crate::error::{Error, Result};
use crate::hermitian::{self, lambda_star_max, lambda_star_min};
use crate::spectral::{self, GepInstance, GroundTruth, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    Master,
    Band,
    Bounded,
    Alternative,
    MatrixForm,
}

impl BoundMethod {
    pub const ALL: [BoundMethod; 5] =
        [BoundMethod::Master, BoundMethod::Band, BoundMethod::Bounded, BoundMethod::Alternative, BoundMethod::MatrixForm];

    pub fn name(self) -> &'static str {
        match self {
            BoundMethod::Master => "master",
            BoundMethod::Band => "band",
            BoundMethod::Bounded => "bounded",
            BoundMethod::Alternative => "alternative",
            BoundMethod::MatrixForm => "matrix_form",
        }
    }

    /// Whether the family needs `λ_m(B) > λ_1(𝒩^(B))`.
    pub fn needs_well_conditioning(self) -> bool {
        self != BoundMethod::Alternative
    }
}

impl std::str::FromStr for BoundMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        BoundMethod::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| format!("unknown bound method `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConditioningIssue {
    SubspaceDimensionExceedsTrial { subspace: usize, trial: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditioningReport {
    /// λ_m(B), m = dim E.
    pub lambda_m_b: f64,
    /// λ_1(𝒩^(B)).
    pub lambda_1_noise: f64,
    pub margin: f64,
    pub well_conditioned: bool,
    pub issue: Option<ConditioningIssue>,
}

pub fn check_well_conditioned(instance: &GepInstance) -> Result<ConditioningReport> {
    let truth = instance.truth()?;
    let m = truth.subspace_dim()?;
    if m == 0 {
        return Err(Error::EmptySubspace);
    }
    let lambda_1_noise = hermitian::eigh(&instance.noise_weight_b()?)?.largest();
    if m > instance.dim() {
        return Ok(ConditioningReport {
            lambda_m_b: f64::NAN,
            lambda_1_noise,
            margin: f64::NAN,
            well_conditioned: false,
            issue: Some(ConditioningIssue::SubspaceDimensionExceedsTrial { subspace: m, trial: instance.dim() }),
        });
    }
    let lambda_m_b = hermitian::eigh(&instance.b)?.values[m - 1];
    let margin = lambda_m_b - lambda_1_noise;
    Ok(ConditioningReport { lambda_m_b, lambda_1_noise, margin, well_conditioned: margin > 0.0, issue: None })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    /// 1-based eigenvalue index.
    pub i: usize,
    /// λ̃_i
    pub tilde: f64,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundFlag {
    /// An approximate eigenvalue left the band `[a, b]`; the band
    /// enclosure is not guaranteed for this instance.
    AssumptionViolated { which: String, index: usize, tilde: f64 },
}

/// Bounds on `λ̃_i - λ_i` for `i = 1..=m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueBounds {
    pub method: BoundMethod,
    /// The denominator shared by all rows.
    pub denominator: f64,
    pub rows: Vec<BoundRow>,
    pub flags: Vec<BoundFlag>,
}

/// Comparison of one bound row with the exact error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RowAssessment {
    pub true_error: f64,
    pub enclosed: bool,
}

/// Default enclosure tolerance, relative to `max(1, |λ|)`.
pub const ENCLOSURE_TOL: f64 = 1e-9;

impl EigenvalueBounds {
    /// Checks `lower - tol·s ≤ λ̃_i - λ_i ≤ upper + tol·s` with
    /// `s = max(1, |λ_i|, |λ̃_i|)` over all rows.
    pub fn assess(&self, true_lambdas: &[f64], tol: f64) -> Result<Vec<RowAssessment>> {
        if true_lambdas.len() != self.rows.len() {
            return Err(Error::TrueEigenvalueCount { expected: self.rows.len(), got: true_lambdas.len() });
        }
        let scale = self
            .rows
            .iter()
            .zip(true_lambdas)
            .fold(1.0_f64, |s, (r, &l)| s.max(r.tilde.abs()).max(l.abs()));
        Ok(self
            .rows
            .iter()
            .zip(true_lambdas)
            .map(|(r, &l)| {
                let e = r.tilde - l;
                RowAssessment { true_error: e, enclosed: r.lower - tol * scale <= e && e <= r.upper + tol * scale }
            })
            .collect())
    }

    pub fn encloses(&self, true_lambdas: &[f64], tol: f64) -> Result<bool> {
        Ok(self.assess(true_lambdas, tol)?.iter().all(|a| a.enclosed))
    }

    pub fn is_flagged(&self) -> bool {
        !self.flags.is_empty()
    }
}

/// Ground truth of a square instance (trial dimension = subspace dimension).
fn square_truth(instance: &GepInstance) -> Result<&GroundTruth> {
    let truth = instance.truth()?;
    let m = truth.subspace_dim()?;
    if m == 0 {
        return Err(Error::EmptySubspace);
    }
    if m != instance.dim() {
        return Err(Error::TrialDimensionMismatch { subspace: m, trial: instance.dim() });
    }
    Ok(truth)
}

fn well_conditioned_margin(instance: &GepInstance) -> Result<f64> {
    let report = check_well_conditioned(instance)?;
    if !report.well_conditioned {
        return Err(Error::IllConditioned { margin: report.margin });
    }
    Ok(report.margin)
}

/// (λ*_min, λ*_max) of `δA - t δB`.
fn delta_extremes(truth: &GroundTruth, t: f64) -> Result<(f64, f64)> {
    let pencil = truth.delta_a.shifted_by(t, &truth.delta_b)?;
    Ok((lambda_star_min(&pencil)?, lambda_star_max(&pencil)?))
}

/// Shared row loop: `numerators(i, λ̃_i) -> (lower, upper)` before division.
fn build(
    method: BoundMethod,
    instance: &GepInstance,
    denominator: f64,
    mut numerators: impl FnMut(&GroundTruth, f64, f64) -> Result<(f64, f64)>,
    centres: Option<&[f64]>,
) -> Result<EigenvalueBounds> {
    let truth = square_truth(instance)?;
    let tilde = instance.solve()?.values;
    let rows = tilde
        .iter()
        .enumerate()
        .map(|(k, &t)| {
            let centre = centres.map_or(t, |c| c[k]);
            let (lo, hi) = numerators(truth, centre, t)?;
            Ok(BoundRow { i: k + 1, tilde: t, lower: lo / denominator, upper: hi / denominator })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EigenvalueBounds { method, denominator, rows, flags: Vec::new() })
}

/// Master bound: integrals over `λ < λ̃_i` and `λ > λ̃_i`, divided by the
/// conditioning margin.
pub fn bounds_master(instance: &GepInstance) -> Result<EigenvalueBounds> {
    square_truth(instance)?;
    let margin = well_conditioned_margin(instance)?;
    build(
        BoundMethod::Master,
        instance,
        margin,
        |t, c, _| {
            let below = spectral::weighted_error_integral(&t.model, &t.subspace, &t.trial, c, Side::Below)?;
            let above = spectral::weighted_error_integral(&t.model, &t.subspace, &t.trial, c, Side::Above)?;
            let (dmin, dmax) = delta_extremes(t, c)?;
            Ok((below + dmin, above + dmax))
        },
        None,
    )
}

/// Checks that the selected subspace is exactly the band `[a, b]`.
fn check_band(truth: &GroundTruth, a: f64, b: f64) -> Result<()> {
    let band = spectral::SpectralSubspace::band(a, b)?;
    if band.indices(&truth.model)? != truth.subspace.indices(&truth.model)? {
        return Err(Error::NotABand { a, b });
    }
    Ok(())
}

fn band_flags(bounds: &mut EigenvalueBounds, a: f64, b: f64) {
    for r in &bounds.rows {
        if !(a <= r.tilde && r.tilde <= b) {
            bounds.flags.push(BoundFlag::AssumptionViolated { which: "iii".into(), index: r.i, tilde: r.tilde });
        }
    }
}

/// Band bound: integrals over `λ < a` and `λ > b`.
///
/// Approximate eigenvalues outside `[a, b]` do not abort; the result carries
/// an `AssumptionViolated` flag instead.
pub fn bounds_band(instance: &GepInstance, a: f64, b: f64) -> Result<EigenvalueBounds> {
    let truth = square_truth(instance)?;
    check_band(truth, a, b)?;
    let margin = well_conditioned_margin(instance)?;
    let (below_a, above_b) = (BorelSet::below(a), BorelSet::above(b));
    let mut bounds = build(
        BoundMethod::Band,
        instance,
        margin,
        |t, c, _| {
            let below = spectral::weighted_error_over(&t.model, &t.subspace, &t.trial, &below_a, c)?;
            let above = spectral::weighted_error_over(&t.model, &t.subspace, &t.trial, &above_b, c)?;
            let (dmin, dmax) = delta_extremes(t, c)?;
            Ok((below + dmin, above + dmax))
        },
        None,
    )?;
    band_flags(&mut bounds, a, b);
    Ok(bounds)
}

/// Operator norms of the off-band noise weights `N_<` (λ < a) and `N_>` (λ > b).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OffBandComponents {
    pub norm_below: f64,
    pub norm_above: f64,
}

pub fn off_band_components(instance: &GepInstance, a: f64, b: f64) -> Result<OffBandComponents> {
    let t = instance.truth()?;
    let norm = |set: BorelSet| -> Result<f64> {
        let m = spectral::error_matrix(&t.model, &t.subspace, &t.trial, &set)?;
        Ok(hermitian::eigh(&m)?.largest().max(0.0))
    };
    Ok(OffBandComponents { norm_below: norm(BorelSet::below(a))?, norm_above: norm(BorelSet::above(b))? })
}

/// Bounded-operator bound: `(E_min - λ̃_i)‖N_<‖` and `(E_max - λ̃_i)‖N_>‖`
/// replace the integrals.
pub fn bounds_bounded(instance: &GepInstance, a: f64, b: f64, e_min: f64, e_max: f64) -> Result<EigenvalueBounds> {
    let truth = square_truth(instance)?;
    if let Some(&atom) = truth.model.atoms().iter().find(|&&l| !(e_min <= l && l <= e_max)) {
        return Err(Error::BoundViolatedByModel { atom, e_min, e_max });
    }
    check_band(truth, a, b)?;
    let margin = well_conditioned_margin(instance)?;
    let off = off_band_components(instance, a, b)?;
    let mut bounds = build(
        BoundMethod::Bounded,
        instance,
        margin,
        |t, c, _| {
            let (dmin, dmax) = delta_extremes(t, c)?;
            Ok(((e_min - c) * off.norm_below + dmin, (e_max - c) * off.norm_above + dmax))
        },
        None,
    )?;
    band_flags(&mut bounds, a, b);
    Ok(bounds)
}

/// Alternative bound, centred on the exact eigenvalues `λ_i` and divided by
/// `λ_m(B)`; needs no well-conditioning.
pub fn bounds_alternative(instance: &GepInstance, true_lambdas: &[f64]) -> Result<EigenvalueBounds> {
    square_truth(instance)?;
    let m = instance.dim();
    if true_lambdas.len() != m {
        return Err(Error::TrueEigenvalueCount { expected: m, got: true_lambdas.len() });
    }
    let lambda_m_b = hermitian::eigh(&instance.b)?.smallest();
    if !(lambda_m_b > 0.0) {
        return Err(Error::SingularWeight(lambda_m_b));
    }
    build(
        BoundMethod::Alternative,
        instance,
        lambda_m_b,
        |t, c, _| {
            let below = spectral::weighted_error_integral(&t.model, &t.subspace, &t.trial, c, Side::Below)?;
            let above = spectral::weighted_error_integral(&t.model, &t.subspace, &t.trial, c, Side::Above)?;
            let (dmin, dmax) = delta_extremes(t, c)?;
            Ok((below + dmin, above + dmax))
        },
        Some(true_lambdas),
    )
}

/// Matrix-valued master bound: extreme eigenvalues of the weighted noise
/// matrices instead of their traces.
pub fn bounds_matrix_form(instance: &GepInstance) -> Result<EigenvalueBounds> {
    square_truth(instance)?;
    let margin = well_conditioned_margin(instance)?;
    build(
        BoundMethod::MatrixForm,
        instance,
        margin,
        |t, c, _| {
            let below = spectral::weighted_error_matrix(&t.model, &t.subspace, &t.trial, c, Side::Below)?;
            let above = spectral::weighted_error_matrix(&t.model, &t.subspace, &t.trial, c, Side::Above)?;
            let (dmin, dmax) = delta_extremes(t, c)?;
            Ok((hermitian::eigh(&below)?.smallest() + dmin, hermitian::eigh(&above)?.largest() + dmax))
        },
        None,
    )
}

/// Parameters for the band-based families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandParams {
    pub a: f64,
    pub b: f64,
    pub e_min: f64,
    pub e_max: f64,
}

impl BandParams {
    /// Band from the subspace interval, operator bounds from the extreme
    /// atoms. An index selection counts as the band `[min, max]` of its atoms
    /// when no other atom falls inside that range.
    pub fn from_truth(truth: &GroundTruth) -> Option<Self> {
        let atoms = truth.model.atoms();
        let (a, b) = match truth.subspace.interval() {
            Some(ab) => ab,
            None => {
                let idx = truth.subspace.indices(&truth.model).ok()?;
                let sel = idx.iter().map(|&k| atoms[k]);
                let lo = sel.clone().fold(f64::INFINITY, f64::min);
                let hi = sel.fold(f64::NEG_INFINITY, f64::max);
                let intruder = (0..atoms.len()).any(|k| !idx.contains(&k) && lo <= atoms[k] && atoms[k] <= hi);
                if idx.is_empty() || intruder {
                    return None;
                }
                (lo, hi)
            }
        };
        Some(BandParams {
            a,
            b,
            e_min: atoms.iter().copied().fold(f64::INFINITY, f64::min),
            e_max: atoms.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        })
    }
}

/// Evaluates one family by name.
pub fn bounds_for(
    method: BoundMethod,
    instance: &GepInstance,
    band: Option<BandParams>,
    true_lambdas: &[f64],
) -> Result<EigenvalueBounds> {
    let need_band = || {
        band.ok_or_else(|| Error::InvalidSubspace("band parameters required for band/bounded families".into()))
    };
    match method {
        BoundMethod::Master => bounds_master(instance),
        BoundMethod::Band => {
            let p = need_band()?;
            bounds_band(instance, p.a, p.b)
        }
        BoundMethod::Bounded => {
            let p = need_band()?;
            bounds_bounded(instance, p.a, p.b, p.e_min, p.e_max)
        }
        BoundMethod::Alternative => bounds_alternative(instance, true_lambdas),
        BoundMethod::MatrixForm => bounds_matrix_form(instance),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::HermitianMatrix;
    use crate::spectral::{assemble_gep, column, DiscreteSpectralModel, SpectralSubspace};
    use approx::assert_abs_diff_eq;

    fn running(delta_a: f64, delta_b: f64) -> GepInstance {
        let model = DiscreteSpectralModel::new(vec![0.0, 1.0, 10.0]).unwrap();
        let sub = SpectralSubspace::from_indices(vec![1]).unwrap();
        let v = column(&[0.1, 1.0, 0.2]).unwrap();
        assemble_gep(
            &model,
            &v,
            &HermitianMatrix::diagonal(&[delta_a]).unwrap(),
            &HermitianMatrix::diagonal(&[delta_b]).unwrap(),
            &sub,
        )
        .unwrap()
    }

    #[test]
    fn conditioning_running_example() {
        let r = check_well_conditioned(&running(0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(r.lambda_m_b, 1.05, epsilon = 1e-15);
        assert_abs_diff_eq!(r.lambda_1_noise, 0.05, epsilon = 1e-15);
        assert_abs_diff_eq!(r.margin, 1.0, epsilon = 1e-14);
        assert!(r.well_conditioned);
        assert_eq!(r.margin, r.lambda_m_b - r.lambda_1_noise);
    }

    #[test]
    fn conditioning_flags_oversized_subspace() {
        let model = DiscreteSpectralModel::new(vec![0.0, 1.0, 10.0]).unwrap();
        let sub = SpectralSubspace::from_indices(vec![0, 1]).unwrap();
        let v = column(&[0.1, 1.0, 0.2]).unwrap();
        let z = HermitianMatrix::zeros(1);
        let inst = assemble_gep(&model, &v, &z, &z, &sub).unwrap();
        let r = check_well_conditioned(&inst).unwrap();
        assert!(!r.well_conditioned);
        assert_eq!(r.issue, Some(ConditioningIssue::SubspaceDimensionExceedsTrial { subspace: 2, trial: 1 }));
        assert!(matches!(bounds_master(&inst), Err(Error::TrialDimensionMismatch { .. })));
    }

    #[test]
    fn master_running_example() {
        // λ̃ = 1.4 / 1.05 = 4/3; hand evaluation of the master inequality
        let b = bounds_master(&running(0.0, 0.0)).unwrap();
        let row = b.rows[0];
        assert_abs_diff_eq!(row.tilde, 4.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(row.upper, (10.0 - 4.0 / 3.0) * 0.04, epsilon = 1e-12);
        assert_abs_diff_eq!(row.upper, 0.346_667, epsilon = 1e-6);
        assert_abs_diff_eq!(row.lower, -4.0 / 3.0 * 0.01, epsilon = 1e-12);
        assert_abs_diff_eq!(row.lower, -0.013_333, epsilon = 1e-6);
        let a = b.assess(&[1.0], ENCLOSURE_TOL).unwrap()[0];
        assert_abs_diff_eq!(a.true_error, 1.0 / 3.0, epsilon = 1e-14);
        assert!(a.enclosed);
    }

    #[test]
    fn alternative_running_example() {
        let b = bounds_alternative(&running(0.0, 0.0), &[1.0]).unwrap();
        assert_abs_diff_eq!(b.rows[0].upper, 9.0 * 0.04 / 1.05, epsilon = 1e-12);
        assert_abs_diff_eq!(b.rows[0].upper, 0.342_857, epsilon = 1e-6);
        assert_abs_diff_eq!(b.rows[0].lower, -0.01 / 1.05, epsilon = 1e-12);
        assert!(b.encloses(&[1.0], ENCLOSURE_TOL).unwrap());
        assert!(matches!(bounds_alternative(&running(0.0, 0.0), &[1.0, 2.0]), Err(Error::TrueEigenvalueCount { .. })));
    }

    #[test]
    fn scalar_matrix_form_equals_master() {
        let inst = running(0.02, -0.01);
        let m = bounds_master(&inst).unwrap();
        let f = bounds_matrix_form(&inst).unwrap();
        assert_abs_diff_eq!(m.rows[0].upper, f.rows[0].upper, epsilon = 1e-15);
        assert_abs_diff_eq!(m.rows[0].lower, f.rows[0].lower, epsilon = 1e-15);
    }

    #[test]
    fn delta_enters_through_star_functions() {
        // δA = 0.1 > 0 only lifts the upper bound
        let base = bounds_master(&running(0.0, 0.0)).unwrap();
        let lifted = bounds_master(&running(0.1, 0.0)).unwrap();
        let t = lifted.rows[0].tilde;
        let margin = lifted.denominator;
        assert_abs_diff_eq!(lifted.rows[0].upper, ((10.0 - t) * 0.04 + 0.1) / margin, epsilon = 1e-12);
        assert_abs_diff_eq!(lifted.rows[0].lower, ((0.0 - t) * 0.01) / margin, epsilon = 1e-12);
        assert!(base.rows[0].tilde < t);
        assert!(lifted.encloses(&[1.0], ENCLOSURE_TOL).unwrap());
    }

    #[test]
    fn ill_conditioned_is_rejected() {
        // second trial vector is mostly noise at λ = 10: B = diag(1, 4.01), 𝒩^(B) = diag(0, 4)
        let model = DiscreteSpectralModel::new(vec![0.0, 1.0, 2.0, 10.0]).unwrap();
        let sub = SpectralSubspace::from_indices(vec![1, 2]).unwrap();
        let mut c = crate::hermitian::CMatrix::zeros(4, 2);
        c[(1, 0)] = num_complex::Complex64::new(1.0, 0.0);
        c[(2, 1)] = num_complex::Complex64::new(0.1, 0.0);
        c[(3, 1)] = num_complex::Complex64::new(2.0, 0.0);
        let v = spectral::TrialMap::new(c).unwrap();
        let z = HermitianMatrix::zeros(2);
        let bad = assemble_gep(&model, &v, &z, &z, &sub).unwrap();
        let r = check_well_conditioned(&bad).unwrap();
        assert!(r.margin <= 0.0);
        assert!(matches!(bounds_master(&bad), Err(Error::IllConditioned { .. })));
        assert!(matches!(bounds_matrix_form(&bad), Err(Error::IllConditioned { .. })));
        // still fine for the alternative family
        let alt = bounds_alternative(&bad, &[2.0, 1.0]).unwrap();
        assert_abs_diff_eq!(alt.denominator, 1.0, epsilon = 1e-14);
        assert!(alt.encloses(&[2.0, 1.0], ENCLOSURE_TOL).unwrap());
    }

    fn banded() -> GepInstance {
        // atoms below, inside and above the band [2, 4]
        let model = DiscreteSpectralModel::new(vec![-3.0, 0.5, 2.5, 3.5, 6.0, 9.0]).unwrap();
        let sub = SpectralSubspace::band(2.0, 4.0).unwrap();
        let mut c = crate::hermitian::CMatrix::zeros(6, 2);
        let re = |x| num_complex::Complex64::new(x, 0.0);
        c[(2, 0)] = re(1.0);
        c[(3, 1)] = re(1.0);
        c[(2, 1)] = re(0.2);
        c[(0, 0)] = re(0.05);
        c[(1, 1)] = re(0.04);
        c[(4, 0)] = re(0.03);
        c[(5, 1)] = re(0.02);
        let v = spectral::TrialMap::new(c).unwrap();
        let z = HermitianMatrix::zeros(2);
        assemble_gep(&model, &v, &z, &z, &sub).unwrap()
    }

    #[test]
    fn band_matches_master_and_bounded_encloses() {
        let inst = banded();
        let truth = [3.5, 2.5];
        let m = bounds_master(&inst).unwrap();
        let b = bounds_band(&inst, 2.0, 4.0).unwrap();
        assert!(!b.is_flagged());
        for (x, y) in m.rows.iter().zip(&b.rows) {
            assert_abs_diff_eq!(x.lower, y.lower, epsilon = 1e-12);
            assert_abs_diff_eq!(x.upper, y.upper, epsilon = 1e-12);
        }
        let bd = bounds_bounded(&inst, 2.0, 4.0, -3.0, 9.0).unwrap();
        assert!(bd.encloses(&truth, ENCLOSURE_TOL).unwrap());
        assert!(matches!(bounds_bounded(&inst, 2.0, 4.0, -2.0, 9.0), Err(Error::BoundViolatedByModel { .. })));
        assert!(matches!(bounds_band(&inst, 2.0, 3.0), Err(Error::NotABand { .. })));
    }

    #[test]
    fn band_flags_eigenvalue_outside_band() {
        // a heavy noise row at 6.0 drags λ̃_1 above b = 4
        let model = DiscreteSpectralModel::new(vec![3.0, 6.0]).unwrap();
        let sub = SpectralSubspace::band(2.0, 4.0).unwrap();
        let z = HermitianMatrix::zeros(1);
        let v = column(&[1.0, 0.9]).unwrap();
        let inst = assemble_gep(&model, &v, &z, &z, &sub).unwrap();
        let tilde = inst.solve().unwrap().values[0];
        assert!(tilde > 4.0, "tilde {tilde}");
        let b = bounds_band(&inst, 2.0, 4.0).unwrap();
        assert!(b.is_flagged());
        assert!(matches!(&b.flags[0], BoundFlag::AssumptionViolated { which, .. } if which == "iii"));
    }

    #[test]
    fn zero_noise_gives_zero_bounds() {
        let model = DiscreteSpectralModel::new(vec![-1.0, 2.0, 5.0]).unwrap();
        let sub = SpectralSubspace::band(1.0, 6.0).unwrap();
        let mut c = crate::hermitian::CMatrix::zeros(3, 2);
        c[(1, 0)] = num_complex::Complex64::new(1.0, 0.5);
        c[(2, 0)] = num_complex::Complex64::new(0.3, 0.0);
        c[(2, 1)] = num_complex::Complex64::new(0.0, 2.0);
        let v = spectral::TrialMap::new(c).unwrap();
        let z = HermitianMatrix::zeros(2);
        let inst = assemble_gep(&model, &v, &z, &z, &sub).unwrap();
        let params = BandParams::from_truth(inst.truth().unwrap()).unwrap();
        for method in BoundMethod::ALL {
            let b = bounds_for(method, &inst, Some(params), &[5.0, 2.0]).unwrap();
            for r in &b.rows {
                assert!(r.lower.abs() <= 1e-12 && r.upper.abs() <= 1e-12, "{method:?} {r:?}");
            }
        }
    }
}
