//! Subspace protocols and dimension detection.
//!
//! A protocol produces a Hermitian pencil `[A_M, B_M]` for every guess
//! dimension `M`. The runner counts the eigenvalues of `B_M` strictly above
//! a noise threshold, grows `M` by one while every direction is detected,
//! then restricts the pencil to the `m` leading eigenvectors of `B_M` and
//! solves the reduced `m`×`m` problem.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::borel::BorelSet;
use crate::error::{Error, Result};
use crate::hermitian::{self, CMatrix, GepSolution, HermitianMatrix};
use crate::spectral::{self, DiscreteSpectralModel, GepInstance, SpectralSubspace, TrialMap};

/// Thresholds are floored at this multiple of `‖B_M‖`.
pub const THRESHOLD_FLOOR: f64 = 1e-14;

pub trait SubspaceProtocol {
    /// The pencil at guess dimension `guess_dim ≥ 1`.
    fn generate(&self, guess_dim: usize) -> Result<GepInstance>;

    /// `V_M` is the first `M` columns of `V_M'` for all `M' > M`.
    fn is_nested(&self) -> bool;

    /// Largest guess dimension the protocol can produce, if bounded.
    fn capacity(&self) -> Option<usize> {
        None
    }
}

impl<P: SubspaceProtocol + ?Sized> SubspaceProtocol for &P {
    fn generate(&self, guess_dim: usize) -> Result<GepInstance> {
        (**self).generate(guess_dim)
    }

    fn is_nested(&self) -> bool {
        (**self).is_nested()
    }

    fn capacity(&self) -> Option<usize> {
        (**self).capacity()
    }
}

impl<P: SubspaceProtocol + ?Sized> SubspaceProtocol for Box<P> {
    fn generate(&self, guess_dim: usize) -> Result<GepInstance> {
        (**self).generate(guess_dim)
    }

    fn is_nested(&self) -> bool {
        (**self).is_nested()
    }

    fn capacity(&self) -> Option<usize> {
        (**self).capacity()
    }
}

/// Certified bounds `ε_M ≥ ‖𝒩^(B)_M‖`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseBounds {
    Constant(f64),
    /// `table[M - 1]` is ε_M.
    Table(Vec<f64>),
}

impl NoiseBounds {
    pub fn epsilon(&self, guess_dim: usize) -> Result<f64> {
        let eps = match self {
            NoiseBounds::Constant(e) => Some(*e),
            NoiseBounds::Table(t) => guess_dim.checked_sub(1).and_then(|k| t.get(k)).copied(),
        };
        match eps {
            Some(e) if e >= 0.0 && e.is_finite() => Ok(e),
            _ => Err(Error::InvalidNoiseBoundValue { dim: guess_dim }),
        }
    }
}

/// Number of eigenvalues of `B` strictly greater than `threshold`.
pub fn detect_dimension(b: &HermitianMatrix, threshold: f64) -> Result<usize> {
    if !(threshold > 0.0) {
        return Err(Error::NonPositiveThreshold(threshold));
    }
    Ok(count_above(&hermitian::eigvalsh(b)?, threshold))
}

fn count_above(values: &[f64], threshold: f64) -> usize {
    values.iter().take_while(|&&v| v > threshold).count()
}

/// Pencil restricted to the `m` leading eigenvectors of `B`.
#[derive(Debug, Clone)]
pub struct Refinement {
    /// `U_m`, `M`×`m` with orthonormal columns.
    pub basis: CMatrix,
    /// `[U_m† A U_m, U_m† B U_m]`, with transformed ground truth when present.
    pub instance: GepInstance,
}

impl Refinement {
    pub fn reduced_a(&self) -> &HermitianMatrix {
        &self.instance.a
    }

    pub fn reduced_b(&self) -> &HermitianMatrix {
        &self.instance.b
    }
}

pub fn refine(instance: &GepInstance, m: usize) -> Result<Refinement> {
    if m == 0 || m > instance.dim() {
        return Err(Error::IndexOutOfRange { index: m, len: instance.dim() });
    }
    let basis = hermitian::eigh(&instance.b)?.leading_vectors(m);
    let instance = instance.congruence(&basis)?;
    Ok(Refinement { basis, instance })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum DetectionFlag {
    /// Every direction was still detected at the largest allowed `M`.
    BudgetExhausted,
    /// Ground truth shows `‖𝒩^(B)_M‖ > ε_M`; the lower-bound guarantee is void.
    InvalidNoiseBound { guess_dim: usize, noise_norm: f64, epsilon: f64 },
    /// No ground truth: the noise bounds were taken on trust.
    NoiseBoundsUnverified,
}

impl DetectionFlag {
    pub fn name(&self) -> &'static str {
        match self {
            DetectionFlag::BudgetExhausted => "BudgetExhausted",
            DetectionFlag::InvalidNoiseBound { .. } => "InvalidNoiseBound",
            DetectionFlag::NoiseBoundsUnverified => "NoiseBoundsUnverified",
        }
    }
}

/// One step of the `M` loop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectionStep {
    pub guess_dim: usize,
    pub detected: usize,
    pub threshold: f64,
}

#[derive(Debug, Clone)]
pub struct DetectionResult {
    pub guess_dimension: usize,
    pub detected_m: usize,
    /// `U_m`; `M`×0 when nothing was detected.
    pub basis: CMatrix,
    /// `[A_M^m, B_M^m]`; `None` when `m = 0`.
    pub reduced: Option<GepInstance>,
    /// Generalized eigenvalues of the reduced pencil, descending.
    pub estimates: GepSolution,
    pub threshold_used: f64,
    pub flags: Vec<DetectionFlag>,
    pub steps: Vec<DetectionStep>,
}

impl DetectionResult {
    pub fn has_flag(&self, name: &str) -> bool {
        self.flags.iter().any(|f| f.name() == name)
    }

    pub fn budget_exhausted(&self) -> bool {
        self.has_flag("BudgetExhausted")
    }

    pub fn invalid_noise_bound(&self) -> bool {
        self.has_flag("InvalidNoiseBound")
    }
}

fn check_range(m_start: usize, m_max: usize) -> Result<()> {
    if m_start == 0 || m_start > m_max {
        return Err(Error::InvalidRange(format!("guess dimensions {m_start}..={m_max}")));
    }
    Ok(())
}

fn run_with<P: SubspaceProtocol>(
    protocol: &P,
    m_start: usize,
    m_max: usize,
    threshold_at: impl Fn(usize) -> Result<f64>,
    verify_bounds: bool,
) -> Result<DetectionResult> {
    check_range(m_start, m_max)?;
    let m_max = match protocol.capacity() {
        Some(cap) if m_start > cap => return Err(Error::ProtocolCapacity { requested: m_start, capacity: cap }),
        Some(cap) => m_max.min(cap),
        None => m_max,
    };
    let mut flags = Vec::new();
    let mut steps = Vec::new();
    let mut guess = m_start;
    loop {
        let instance = protocol.generate(guess)?;
        if instance.dim() != guess {
            return Err(Error::DimensionMismatch(format!(
                "protocol returned a {0}x{0} pencil for guess dimension {guess}",
                instance.dim()
            )));
        }
        let eb = hermitian::eigh(&instance.b)?;
        let requested = threshold_at(guess)?;
        let threshold = requested.max(THRESHOLD_FLOOR * eb.norm());
        if verify_bounds {
            match instance.ground_truth {
                Some(_) => {
                    let noise_norm = hermitian::spectral_norm(&instance.noise_weight_b()?)?;
                    if noise_norm > threshold {
                        flags.push(DetectionFlag::InvalidNoiseBound { guess_dim: guess, noise_norm, epsilon: requested });
                    }
                }
                None => {
                    if !flags.contains(&DetectionFlag::NoiseBoundsUnverified) {
                        flags.push(DetectionFlag::NoiseBoundsUnverified);
                    }
                }
            }
        }
        let m = count_above(&eb.values, threshold);
        steps.push(DetectionStep { guess_dim: guess, detected: m, threshold });
        if m == guess && guess < m_max {
            guess += 1;
            continue;
        }
        if m == guess {
            flags.push(DetectionFlag::BudgetExhausted);
        }
        if m == 0 {
            return Ok(DetectionResult {
                guess_dimension: guess,
                detected_m: 0,
                basis: CMatrix::zeros(guess, 0),
                reduced: None,
                estimates: GepSolution::empty(),
                threshold_used: threshold,
                flags,
                steps,
            });
        }
        let refined = refine(&instance, m)?;
        let estimates = refined.instance.solve()?;
        return Ok(DetectionResult {
            guess_dimension: guess,
            detected_m: m,
            basis: refined.basis,
            reduced: Some(refined.instance),
            estimates,
            threshold_used: threshold,
            flags,
            steps,
        });
    }
}

/// Detection with a fixed threshold `ε_th > 0`.
pub fn run_protocol<P: SubspaceProtocol>(
    protocol: &P,
    m_start: usize,
    m_max: usize,
    threshold: f64,
) -> Result<DetectionResult> {
    if !(threshold > 0.0) {
        return Err(Error::NonPositiveThreshold(threshold));
    }
    run_with(protocol, m_start, m_max, |_| Ok(threshold), false)
}

/// Detection with the per-`M` noise bounds as thresholds. With ground
/// truth available each visited `M` is checked for `‖𝒩^(B)_M‖ ≤ ε_M`.
pub fn run_epsilon_protocol<P: SubspaceProtocol>(
    protocol: &P,
    noise_bounds: &NoiseBounds,
    m_start: usize,
    m_max: usize,
) -> Result<DetectionResult> {
    run_with(protocol, m_start, m_max, |g| noise_bounds.epsilon(g), true)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundRun {
    pub seed: u64,
    pub detected_m: usize,
    pub true_dim: usize,
    pub invalid_noise_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundReport {
    pub runs: usize,
    /// Runs with `detected_m > dim E`.
    pub violations: usize,
    /// Violations among runs whose noise bounds were valid.
    pub violations_with_valid_bounds: usize,
    pub invalid_bound_runs: usize,
    pub records: Vec<LowerBoundRun>,
}

/// Runs the ε-protocol once per seed and counts detected dimensions above
/// the true one. `make(seed)` supplies a synthetic protocol and its bounds.
pub fn verify_dimension_lower_bound<P, F>(
    make: F,
    seeds: impl IntoIterator<Item = u64>,
    m_start: usize,
    m_max: usize,
) -> Result<LowerBoundReport>
where
    P: SubspaceProtocol,
    F: Fn(u64) -> Result<(P, NoiseBounds)>,
{
    let mut records = Vec::new();
    for seed in seeds {
        let (protocol, bounds) = make(seed)?;
        let result = run_epsilon_protocol(&protocol, &bounds, m_start, m_max)?;
        let true_dim = protocol.generate(result.guess_dimension)?.truth()?.subspace_dim()?;
        records.push(LowerBoundRun {
            seed,
            detected_m: result.detected_m,
            true_dim,
            invalid_noise_bound: result.invalid_noise_bound(),
        });
    }
    records.sort_by_key(|r| r.seed);
    let violations = records.iter().filter(|r| r.detected_m > r.true_dim).count();
    let violations_with_valid_bounds =
        records.iter().filter(|r| r.detected_m > r.true_dim && !r.invalid_noise_bound).count();
    let invalid_bound_runs = records.iter().filter(|r| r.invalid_noise_bound).count();
    Ok(LowerBoundReport { runs: records.len(), violations, violations_with_valid_bounds, invalid_bound_runs, records })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseKind {
    /// `𝒩^(B) = N†N ≥ 0`.
    PureSubspace,
    /// Indefinite noise with `‖𝒩^(B)‖ ≤ ε_M`.
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectionCondition {
    /// λ_{m*}(S_M† S_M)
    pub signal_strength: f64,
    pub required: f64,
    pub satisfied: bool,
}

/// Sufficient condition for detecting exactly `m* = dim E`: the signal
/// strength must exceed `ε_M` (pure subspace noise) or `2ε_M` (general).
pub fn detection_condition(instance: &GepInstance, epsilon_m: f64, kind: NoiseKind) -> Result<DetectionCondition> {
    let m_star = instance.truth()?.subspace_dim()?;
    if m_star == 0 {
        return Err(Error::EmptySubspace);
    }
    let signal_strength = if m_star > instance.dim() {
        0.0
    } else {
        hermitian::eigh(&instance.signal_gram()?)?.values[m_star - 1]
    };
    let required = match kind {
        NoiseKind::PureSubspace => epsilon_m,
        NoiseKind::General => 2.0 * epsilon_m,
    };
    Ok(DetectionCondition { signal_strength, required, satisfied: signal_strength > required })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub guess_dim: usize,
    /// λ_m(B_M^m)
    pub lambda_m: f64,
    pub epsilon: f64,
    /// ε_M / λ_m(B_M^m); `None` when λ_m ≤ 0.
    pub ratio: Option<f64>,
    pub detected_m: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTrace {
    pub m: usize,
    pub rows: Vec<SweepRow>,
    /// Consecutive pairs where λ_m(B_M) decreased by more than the tolerance.
    pub monotonicity_violations: usize,
}

pub const MONOTONICITY_TOL: f64 = 1e-12;

/// Runs the fixed-`m` variant of the protocol (no detection step) over a
/// range of guess dimensions and records the conditioning diagnostics.
pub fn sweep_guess_dimension<P: SubspaceProtocol>(
    protocol: &P,
    m: usize,
    guess_dims: RangeInclusive<usize>,
    noise_bounds: &NoiseBounds,
) -> Result<SweepTrace> {
    if !protocol.is_nested() {
        return Err(Error::NotNested);
    }
    if guess_dims.is_empty() || *guess_dims.start() == 0 {
        return Err(Error::InvalidRange(format!("{guess_dims:?}")));
    }
    let mut rows = Vec::new();
    for guess in guess_dims {
        let instance = protocol.generate(guess)?;
        let refined = refine(&instance, m)?;
        let lambda_m = hermitian::eigh(refined.reduced_b())?.smallest();
        let epsilon = noise_bounds.epsilon(guess)?;
        let eb = hermitian::eigvalsh(&instance.b)?;
        let norm = eb[0].abs().max(eb[eb.len() - 1].abs());
        let detected_m = count_above(&eb, epsilon.max(THRESHOLD_FLOOR * norm));
        let ratio = (lambda_m > 0.0).then(|| epsilon / lambda_m);
        rows.push(SweepRow { guess_dim: guess, lambda_m, epsilon, ratio, detected_m });
    }
    let monotonicity_violations = rows
        .windows(2)
        .filter(|w| w[1].lambda_m < w[0].lambda_m - MONOTONICITY_TOL * w[0].lambda_m.abs().max(1.0))
        .count();
    Ok(SweepTrace { m, rows, monotonicity_violations })
}

/// Largest deviation between `B_M` and the leading `M`×`M` block of
/// `B_{M_max}` over `M = 1..M_max`.
pub fn nesting_deviation<P: SubspaceProtocol>(protocol: &P, m_max: usize) -> Result<f64> {
    let full = protocol.generate(m_max)?;
    let mut worst: f64 = 0.0;
    for guess in 1..=m_max {
        let b = protocol.generate(guess)?.b;
        let lead = full.b.leading(guess)?;
        worst = worst.max((b.matrix() - lead.matrix()).iter().fold(0.0_f64, |m, z| m.max(z.norm())));
    }
    Ok(worst)
}

/// `ε^{VU}(I) ≤ ε^{V}(I)` for `U` with orthonormal columns.
pub fn refined_error_dominance_check(
    model: &DiscreteSpectralModel,
    subspace: &SpectralSubspace,
    v: &TrialMap,
    u: &CMatrix,
    set: &BorelSet,
) -> Result<bool> {
    if u.nrows() != v.trial_dim() || u.ncols() == 0 || u.ncols() > u.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "basis is {}x{}, trial dimension {}",
            u.nrows(),
            u.ncols(),
            v.trial_dim()
        )));
    }
    let deviation = (u.adjoint() * u - CMatrix::identity(u.ncols(), u.ncols())).iter().fold(0.0_f64, |m, z| m.max(z.norm()));
    if deviation > 1e-10 {
        return Err(Error::NonOrthonormalBasis(deviation));
    }
    let refined = spectral::error_measure(model, subspace, &v.compose(u)?, set)?;
    let full = spectral::error_measure(model, subspace, v, set)?;
    let scale = full.abs().max(1.0);
    Ok(refined <= full + 1e-12 * scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{assemble_gep, column};
    use approx::assert_abs_diff_eq;

    /// B = I at every M.
    struct Saturating;

    impl SubspaceProtocol for Saturating {
        fn generate(&self, guess_dim: usize) -> Result<GepInstance> {
            GepInstance::new(HermitianMatrix::identity(guess_dim), HermitianMatrix::identity(guess_dim))
        }

        fn is_nested(&self) -> bool {
            true
        }
    }

    #[test]
    fn detect_dimension_cases() {
        let b = HermitianMatrix::diagonal(&[1.0, 0.5, 1e-9]).unwrap();
        assert_eq!(detect_dimension(&b, 1e-6).unwrap(), 2);
        assert_eq!(detect_dimension(&b, 2.0).unwrap(), 0);
        assert_eq!(detect_dimension(&b, 0.5).unwrap(), 1);
        assert!(matches!(detect_dimension(&b, 0.0), Err(Error::NonPositiveThreshold(_))));
        assert!(matches!(detect_dimension(&b, -1.0), Err(Error::NonPositiveThreshold(_))));
    }

    #[test]
    fn refine_diagonal_weight() {
        let a = HermitianMatrix::from_rows(&[&[3.0, 1.0], &[1.0, 2.0]]).unwrap();
        let b = HermitianMatrix::diagonal(&[1.0, 1e-12]).unwrap();
        let r = refine(&GepInstance::new(a, b).unwrap(), 1).unwrap();
        assert_abs_diff_eq!(r.reduced_b().matrix()[(0, 0)].re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.reduced_a().matrix()[(0, 0)].re, 3.0, epsilon = 1e-15);
    }

    #[test]
    fn refine_full_basis_keeps_eigenvalues() {
        let a = HermitianMatrix::from_rows(&[&[3.0, 1.0, 0.0], &[1.0, 2.0, 0.5], &[0.0, 0.5, -1.0]]).unwrap();
        let b = HermitianMatrix::from_rows(&[&[2.0, 0.3, 0.1], &[0.3, 1.0, 0.0], &[0.1, 0.0, 0.7]]).unwrap();
        let inst = GepInstance::new(a, b).unwrap();
        let r = refine(&inst, 3).unwrap();
        let x = inst.solve().unwrap().values;
        let y = r.instance.solve().unwrap().values;
        for (p, q) in x.iter().zip(&y) {
            assert_abs_diff_eq!(p, q, epsilon = 1e-10);
        }
        assert!(matches!(refine(&inst, 4), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(refine(&inst, 0), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn saturating_protocol_exhausts_budget() {
        let r = run_protocol(&Saturating, 1, 4, 0.5).unwrap();
        assert_eq!(r.guess_dimension, 4);
        assert_eq!(r.detected_m, 4);
        assert!(r.budget_exhausted());
        assert_eq!(r.steps.len(), 4);
        assert!(matches!(run_protocol(&Saturating, 3, 2, 0.5), Err(Error::InvalidRange(_))));
        assert!(matches!(run_protocol(&Saturating, 1, 2, 0.0), Err(Error::NonPositiveThreshold(_))));
    }

    #[test]
    fn black_box_bounds_are_marked_unverified() {
        let r = run_epsilon_protocol(&Saturating, &NoiseBounds::Constant(2.0), 1, 3).unwrap();
        assert_eq!(r.detected_m, 0);
        assert!(r.has_flag("NoiseBoundsUnverified"));
        assert!(r.estimates.is_empty());
    }

    #[test]
    fn noise_bound_table_lookup() {
        let t = NoiseBounds::Table(vec![0.1, 0.2]);
        assert_eq!(t.epsilon(2).unwrap(), 0.2);
        assert!(t.epsilon(3).is_err());
        assert!(t.epsilon(0).is_err());
        assert!(NoiseBounds::Constant(-1.0).epsilon(1).is_err());
    }

    #[test]
    fn detection_condition_cases() {
        let model = DiscreteSpectralModel::new(vec![1.0, 2.0, 3.0]).unwrap();
        let sub = SpectralSubspace::from_indices(vec![0, 1]).unwrap();
        let mut c = CMatrix::zeros(3, 2);
        c[(0, 0)] = num_complex::Complex64::new(1.0, 0.0);
        c[(1, 1)] = num_complex::Complex64::new(1.0, 0.0);
        let v = TrialMap::new(c).unwrap();
        let z = HermitianMatrix::zeros(2);
        let inst = assemble_gep(&model, &v, &z, &z, &sub).unwrap();
        let r = detection_condition(&inst, 0.5, NoiseKind::PureSubspace).unwrap();
        assert_abs_diff_eq!(r.signal_strength, 1.0, epsilon = 1e-15);
        assert!(r.satisfied);
        let r = detection_condition(&inst, 0.5, NoiseKind::General).unwrap();
        assert_eq!(r.required, 1.0);
        assert!(!r.satisfied);

        let noise_only = column(&[0.0, 0.0, 1.0]).unwrap();
        let z1 = HermitianMatrix::zeros(1);
        let inst = assemble_gep(&model, &noise_only, &z1, &z1, &sub).unwrap();
        let r = detection_condition(&inst, 1e-9, NoiseKind::PureSubspace).unwrap();
        assert_eq!(r.signal_strength, 0.0);
        assert!(!r.satisfied);
    }

    #[test]
    fn dominance_examples() {
        let model = DiscreteSpectralModel::new(vec![0.0, 1.0, 10.0, 4.0]).unwrap();
        let sub = SpectralSubspace::from_indices(vec![1]).unwrap();
        let mut c = CMatrix::zeros(4, 3);
        for k in 0..4 {
            for j in 0..3 {
                c[(k, j)] = num_complex::Complex64::new((k + 2 * j) as f64 * 0.1, (k as f64 - j as f64) * 0.05);
            }
        }
        let v = TrialMap::new(c).unwrap();
        let eye = CMatrix::identity(3, 3);
        assert!(refined_error_dominance_check(&model, &sub, &v, &eye, &BorelSet::real_line()).unwrap());
        let e1 = eye.columns(0, 1).into_owned();
        assert!(refined_error_dominance_check(&model, &sub, &v, &e1, &BorelSet::above(2.0)).unwrap());
        let skew = CMatrix::from_element(3, 1, num_complex::Complex64::new(1.0, 0.0));
        assert!(matches!(
            refined_error_dominance_check(&model, &sub, &v, &skew, &BorelSet::real_line()),
            Err(Error::NonOrthonormalBasis(_))
        ));
    }

    #[test]
    fn sweep_rejects_non_nested() {
        struct Loose;
        impl SubspaceProtocol for Loose {
            fn generate(&self, g: usize) -> Result<GepInstance> {
                Saturating.generate(g)
            }
            fn is_nested(&self) -> bool {
                false
            }
        }
        let e = sweep_guess_dimension(&Loose, 1, 1..=3, &NoiseBounds::Constant(0.1));
        assert!(matches!(e, Err(Error::NotNested)));
        let t = sweep_guess_dimension(&Saturating, 1, 2..=2, &NoiseBounds::Constant(0.1)).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0].ratio, Some(0.1));
    }
}
