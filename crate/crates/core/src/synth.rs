//! Seeded instance generators, protocol families and brute-force references.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{CMatrix, HermitianMatrix};
use crate::protocol::{self, NoiseBounds, NoiseKind, SubspaceProtocol};
use crate::rng;
use crate::spectral::{DiscreteSpectralModel, GepInstance, GroundTruth, Selection, SpectralSubspace, TrialMap};

/// Largest atom magnitude the generators produce.
pub const MAX_ATOM: f64 = 1e6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SpectrumLayout {
    /// Atoms uniform on `[lo, hi]`.
    Uniform([f64; 2]),
    /// Gaussian clusters of the given width around uniform centres in `range`.
    Clustered { range: [f64; 2], clusters: usize, width: f64 },
    /// `±10^u` with `u` uniform on `[0, log10 max_abs]`.
    HeavyTail { max_abs: f64 },
}

impl Default for SpectrumLayout {
    fn default() -> Self {
        SpectrumLayout::Uniform([-10.0, 10.0])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum SubspaceSpec {
    /// The `m*` lowest atoms.
    Count(usize),
    /// All atoms in `[a, b]`.
    Interval([f64; 2]),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub seed: u64,
    pub n_atoms: usize,
    #[serde(default)]
    pub spectrum_layout: SpectrumLayout,
    pub subspace: SubspaceSpec,
    #[serde(rename = "trial_M")]
    pub trial_dim: usize,
    /// Magnitude of the rows of `V` outside the subspace.
    pub noise_scale: f64,
    /// Operator norm of `δA` and `δB`.
    #[serde(default)]
    pub delta_scale: f64,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidSpec(msg.into())
}

fn check_range(lo: f64, hi: f64, what: &str) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(invalid(format!("{what}: bad range [{lo}, {hi}]")));
    }
    if lo.abs().max(hi.abs()) > MAX_ATOM {
        return Err(invalid(format!("{what}: range exceeds |λ| ≤ {MAX_ATOM:e}")));
    }
    Ok(())
}

impl InstanceSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_atoms == 0 {
            return Err(invalid("n_atoms must be at least 1"));
        }
        if self.trial_dim == 0 {
            return Err(invalid("trial_M must be at least 1"));
        }
        if !(self.noise_scale >= 0.0 && self.noise_scale.is_finite()) {
            return Err(invalid(format!("noise_scale {} must be finite and ≥ 0", self.noise_scale)));
        }
        if !(self.delta_scale >= 0.0 && self.delta_scale.is_finite()) {
            return Err(invalid(format!("delta_scale {} must be finite and ≥ 0", self.delta_scale)));
        }
        match &self.spectrum_layout {
            SpectrumLayout::Uniform([lo, hi]) => check_range(*lo, *hi, "uniform layout")?,
            SpectrumLayout::Clustered { range, clusters, width } => {
                check_range(range[0], range[1], "clustered layout")?;
                if *clusters == 0 || !(*width >= 0.0 && width.is_finite()) {
                    return Err(invalid("clustered layout needs clusters ≥ 1 and width ≥ 0"));
                }
            }
            SpectrumLayout::HeavyTail { max_abs } => {
                if !(*max_abs >= 1.0 && *max_abs <= MAX_ATOM) {
                    return Err(invalid(format!("heavy_tail max_abs {max_abs} outside [1, {MAX_ATOM:e}]")));
                }
            }
        }
        match &self.subspace {
            SubspaceSpec::Count(m) if *m == 0 || *m > self.n_atoms => {
                Err(invalid(format!("subspace dimension {m} outside 1..={}", self.n_atoms)))
            }
            SubspaceSpec::Interval([a, b]) if !(a.is_finite() && b.is_finite() && a <= b) => {
                Err(invalid(format!("subspace interval [{a}, {b}]")))
            }
            _ => Ok(()),
        }
    }
}

fn gen_atoms(spec: &InstanceSpec) -> Vec<f64> {
    let mut r = rng::stream(spec.seed, "atoms");
    let clamp = |x: f64| x.clamp(-MAX_ATOM, MAX_ATOM);
    match &spec.spectrum_layout {
        SpectrumLayout::Uniform([lo, hi]) => (0..spec.n_atoms).map(|_| lo + (hi - lo) * r.random::<f64>()).collect(),
        SpectrumLayout::Clustered { range, clusters, width } => {
            let centres: Vec<f64> =
                (0..*clusters).map(|_| range[0] + (range[1] - range[0]) * r.random::<f64>()).collect();
            (0..spec.n_atoms)
                .map(|_| {
                    let c = centres[r.random_range(0..centres.len())];
                    let z: f64 = r.sample(rand_distr::StandardNormal);
                    clamp(c + width * z)
                })
                .collect()
        }
        SpectrumLayout::HeavyTail { max_abs } => (0..spec.n_atoms)
            .map(|_| {
                let mag = 10f64.powf(r.random::<f64>() * max_abs.log10());
                if r.random::<bool>() { mag } else { -mag }
            })
            .collect(),
    }
}

fn gen_subspace(spec: &InstanceSpec, model: &DiscreteSpectralModel) -> Result<SpectralSubspace> {
    let sub = match &spec.subspace {
        SubspaceSpec::Count(m) => {
            let mut order: Vec<usize> = (0..model.dim()).collect();
            order.sort_by(|&a, &b| model.atoms()[a].total_cmp(&model.atoms()[b]));
            order.truncate(*m);
            SpectralSubspace::from_indices(order)?
        }
        SubspaceSpec::Interval([a, b]) => SpectralSubspace::band(*a, *b)?,
    };
    if sub.dim(model)? == 0 {
        return Err(invalid("subspace interval contains no atom"));
    }
    Ok(sub)
}

/// `Q diag(s) Q†` with Haar `Q`, `|s_k|` uniform and rescaled so that
/// `‖δ‖ = scale`, signs random.
pub fn random_delta<R: Rng + ?Sized>(r: &mut R, dim: usize, scale: f64) -> HermitianMatrix {
    if scale == 0.0 || dim == 0 {
        return HermitianMatrix::zeros(dim);
    }
    let q = rng::random_unitary(r, dim);
    let mut s: Vec<f64> = (0..dim).map(|_| r.random::<f64>()).collect();
    let top = s.iter().copied().fold(0.0_f64, f64::max).max(f64::MIN_POSITIVE);
    for x in s.iter_mut() {
        *x *= scale / top;
        if r.random::<bool>() {
            *x = -*x;
        }
    }
    let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(dim, s.iter().map(|&x| Complex64::new(x, 0.0))));
    HermitianMatrix::hermitian_part(&q * d * q.adjoint())
}

/// Trial map and perturbations drawn from streams keyed by `tag`.
fn gen_trial_parts(
    spec: &InstanceSpec,
    model: &DiscreteSpectralModel,
    subspace: &SpectralSubspace,
    trial_dim: usize,
    tag: &str,
) -> Result<(TrialMap, HermitianMatrix, HermitianMatrix)> {
    let mask = subspace.mask(model)?;
    let mut c = rng::complex_gaussian(&mut rng::stream(spec.seed, &format!("trial{tag}")), model.dim(), trial_dim);
    for (k, inside) in mask.iter().enumerate() {
        if !inside {
            c.row_mut(k).scale_mut(spec.noise_scale);
        }
    }
    let delta_a = random_delta(&mut rng::stream(spec.seed, &format!("delta-a{tag}")), trial_dim, spec.delta_scale);
    let delta_b = random_delta(&mut rng::stream(spec.seed, &format!("delta-b{tag}")), trial_dim, spec.delta_scale);
    Ok((TrialMap::new(c)?, delta_a, delta_b))
}

/// Model, subspace, trial map and perturbations for one spec. The signal
/// rows of `V` are standard complex normal, the noise rows are scaled by
/// `noise_scale`.
pub fn gen_instance(spec: &InstanceSpec) -> Result<GroundTruth> {
    spec.validate()?;
    let model = DiscreteSpectralModel::new(gen_atoms(spec))?;
    let subspace = gen_subspace(spec, &model)?;
    let (trial, delta_a, delta_b) = gen_trial_parts(spec, &model, &subspace, spec.trial_dim, "")?;
    Ok(GroundTruth { model, subspace, trial, delta_a, delta_b })
}

/// A protocol backed by one stored pencil of size `M_max`; guess dimension
/// `M` takes its leading `M`×`M` blocks, so nesting holds exactly.
#[derive(Debug, Clone)]
pub struct NestedProtocol {
    full: GepInstance,
}

impl NestedProtocol {
    pub fn from_instance(full: GepInstance) -> Self {
        NestedProtocol { full }
    }

    pub fn full(&self) -> &GepInstance {
        &self.full
    }
}

impl SubspaceProtocol for NestedProtocol {
    fn generate(&self, guess_dim: usize) -> Result<GepInstance> {
        let cap = self.full.dim();
        if guess_dim == 0 || guess_dim > cap {
            return Err(Error::ProtocolCapacity { requested: guess_dim, capacity: cap });
        }
        let ground_truth = match &self.full.ground_truth {
            Some(t) => Some(GroundTruth {
                model: t.model.clone(),
                subspace: t.subspace.clone(),
                trial: t.trial.leading(guess_dim)?,
                delta_a: t.delta_a.leading(guess_dim)?,
                delta_b: t.delta_b.leading(guess_dim)?,
            }),
            None => None,
        };
        Ok(GepInstance { a: self.full.a.leading(guess_dim)?, b: self.full.b.leading(guess_dim)?, ground_truth })
    }

    fn is_nested(&self) -> bool {
        true
    }

    fn capacity(&self) -> Option<usize> {
        Some(self.full.dim())
    }
}

/// One `n`×`M_max` trial map; guess dimension `M` uses its first `M` columns.
/// `spec.trial_dim` is ignored.
pub fn gen_nested_protocol(spec: &InstanceSpec, m_max: usize) -> Result<NestedProtocol> {
    if m_max == 0 {
        return Err(invalid("M_max must be at least 1"));
    }
    let full = gen_instance(&InstanceSpec { trial_dim: m_max, ..spec.clone() })?;
    Ok(NestedProtocol::from_instance(full.assemble()?))
}

/// Draws a fresh trial map for every guess dimension over a fixed model.
#[derive(Debug, Clone)]
pub struct ResampledProtocol {
    spec: InstanceSpec,
    model: DiscreteSpectralModel,
    subspace: SpectralSubspace,
}

impl ResampledProtocol {
    pub fn new(spec: &InstanceSpec) -> Result<Self> {
        let truth = gen_instance(spec)?;
        Ok(ResampledProtocol { spec: spec.clone(), model: truth.model, subspace: truth.subspace })
    }
}

impl SubspaceProtocol for ResampledProtocol {
    fn generate(&self, guess_dim: usize) -> Result<GepInstance> {
        if guess_dim == 0 {
            return Err(Error::ProtocolCapacity { requested: 0, capacity: 0 });
        }
        let tag = format!("/M={guess_dim}");
        let (trial, delta_a, delta_b) = gen_trial_parts(&self.spec, &self.model, &self.subspace, guess_dim, &tag)?;
        GroundTruth { model: self.model.clone(), subspace: self.subspace.clone(), trial, delta_a, delta_b }.assemble()
    }

    fn is_nested(&self) -> bool {
        false
    }
}

/// The eigenvalues of `H` in the subspace, descending.
pub fn brute_force_reference(model: &DiscreteSpectralModel, subspace: &SpectralSubspace) -> Result<Vec<f64>> {
    let mut values: Vec<f64> = subspace.indices(model)?.into_iter().map(|k| model.atoms()[k]).collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

fn default_max_filters() -> usize {
    16
}

/// Sampled-signal demo: a sum of complex exponentials observed at
/// `samples` equispaced times, filtered by exponential-window filters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterDiagSpec {
    pub frequencies: Vec<f64>,
    pub amplitudes: Vec<f64>,
    pub samples: usize,
    pub time_step: f64,
    pub noise_floor: f64,
    /// Seed for the perturbations.
    #[serde(default)]
    pub seed: u64,
    /// Number of stored filters, the protocol's largest guess dimension.
    #[serde(default = "default_max_filters")]
    pub max_filters: usize,
}

impl FilterDiagSpec {
    pub fn validate(&self) -> Result<()> {
        if self.frequencies.is_empty() || self.frequencies.len() != self.amplitudes.len() {
            return Err(invalid("frequencies and amplitudes must be non-empty and of equal length"));
        }
        if self.frequencies.iter().any(|f| !f.is_finite()) {
            return Err(invalid("non-finite frequency"));
        }
        let mut sorted = self.frequencies.clone();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("frequencies must be distinct"));
        }
        if self.amplitudes.iter().any(|a| !(a.is_finite() && *a >= 0.0)) {
            return Err(invalid("amplitudes must be finite and ≥ 0"));
        }
        if self.samples == 0 || !(self.time_step > 0.0 && self.time_step.is_finite()) {
            return Err(invalid("samples ≥ 1 and time_step > 0 required"));
        }
        if !(self.noise_floor >= 0.0 && self.noise_floor.is_finite()) {
            return Err(invalid("noise_floor must be finite and ≥ 0"));
        }
        if self.max_filters == 0 {
            return Err(invalid("max_filters must be at least 1"));
        }
        Ok(())
    }

    /// Filter centre band: the frequency range padded by one resolution width.
    pub fn band(&self) -> (f64, f64) {
        let pad = 2.0 * PI / (self.samples as f64 * self.time_step);
        let lo = self.frequencies.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = self.frequencies.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (lo - pad, hi + pad)
    }

    /// Filter centres in van der Corput order, so every prefix spreads over
    /// the band.
    pub fn centres(&self) -> Vec<f64> {
        let (lo, hi) = self.band();
        (0..self.max_filters).map(|l| lo + (hi - lo) * van_der_corput(l)).collect()
    }

    pub fn noise_bounds(&self) -> NoiseBounds {
        NoiseBounds::Constant(self.noise_floor)
    }
}

fn van_der_corput(mut l: usize) -> f64 {
    let (mut x, mut base) = (0.0, 0.5);
    while l > 0 {
        if l & 1 == 1 {
            x += base;
        }
        l >>= 1;
        base *= 0.5;
    }
    x
}

/// `V[k][l] = a_k · (1/J) Σ_j w_j e^{-i(ω_k - θ_l) t_j}` with window
/// `w_j = exp(-j/J)` and `t_j = j·Δt`.
pub fn filter_trial_map(spec: &FilterDiagSpec) -> Result<TrialMap> {
    let centres = spec.centres();
    let n = spec.frequencies.len();
    let j_count = spec.samples as f64;
    let mut c = CMatrix::zeros(n, centres.len());
    for (k, (&w, &a)) in spec.frequencies.iter().zip(&spec.amplitudes).enumerate() {
        for (l, &theta) in centres.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..spec.samples {
                let t = j as f64 * spec.time_step;
                let weight = (-(j as f64) / j_count).exp();
                acc += Complex64::from_polar(weight, -(w - theta) * t);
            }
            c[(k, l)] = acc * (a / j_count);
        }
    }
    TrialMap::new(c)
}

/// Nested protocol whose ground-truth subspace is the whole frequency set.
/// `δA` and `δB` have operator norm `noise_floor`, so `ε_M = noise_floor`
/// is a valid bound for every `M`.
pub fn filter_diag_protocol(spec: &FilterDiagSpec) -> Result<NestedProtocol> {
    spec.validate()?;
    let model = DiscreteSpectralModel::new(spec.frequencies.clone())?;
    let subspace = SpectralSubspace::from_selection(Selection::Indices((0..model.dim()).collect()))?;
    let trial = filter_trial_map(spec)?;
    let m = spec.max_filters;
    let delta_a = random_delta(&mut rng::stream(spec.seed, "filter-delta-a"), m, spec.noise_floor);
    let delta_b = random_delta(&mut rng::stream(spec.seed, "filter-delta-b"), m, spec.noise_floor);
    let truth = GroundTruth { model, subspace, trial, delta_a, delta_b };
    Ok(NestedProtocol::from_instance(truth.assemble()?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeSweepRow {
    /// Common factor applied to the spec amplitudes.
    pub scale: f64,
    /// λ_{m*}(S†S) at the sweep's guess dimension.
    pub signal_strength: f64,
    /// Whether the general-noise detection condition holds.
    pub condition_holds: bool,
    pub success_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeSweep {
    pub guess_dim: usize,
    /// Amplitude factor at which λ_{m*}(S†S) = 2ε.
    pub required_scale: f64,
    pub rows: Vec<AmplitudeSweepRow>,
}

impl AmplitudeSweep {
    /// Smallest scale with success rate ≥ 1/2.
    pub fn transition(&self) -> Option<f64> {
        self.rows.iter().find(|r| r.success_rate >= 0.5).map(|r| r.scale)
    }
}

/// Runs the ε-protocol at fixed `M = guess_dim` for every amplitude factor
/// in `scales` and `trials` perturbation seeds. Success means every
/// frequency is detected.
pub fn filter_amplitude_sweep(
    spec: &FilterDiagSpec,
    guess_dim: usize,
    scales: &[f64],
    trials: usize,
) -> Result<AmplitudeSweep> {
    spec.validate()?;
    if guess_dim == 0 || guess_dim > spec.max_filters || trials == 0 {
        return Err(invalid("guess_dim must lie in 1..=max_filters and trials ≥ 1"));
    }
    if spec.noise_floor == 0.0 {
        return Err(invalid("amplitude sweep needs a positive noise floor"));
    }
    let target = spec.frequencies.len();
    let unit = protocol::detection_condition(
        &filter_diag_protocol(spec)?.generate(guess_dim)?,
        spec.noise_floor,
        NoiseKind::General,
    )?;
    let required_scale = (unit.required / unit.signal_strength).sqrt();
    let mut rows = Vec::with_capacity(scales.len());
    for &scale in scales {
        let mut successes = 0;
        let mut condition = None;
        for t in 0..trials {
            let scaled = FilterDiagSpec {
                amplitudes: spec.amplitudes.iter().map(|a| a * scale).collect(),
                seed: spec.seed.wrapping_add(t as u64),
                ..spec.clone()
            };
            let p = filter_diag_protocol(&scaled)?;
            if condition.is_none() {
                condition = Some(protocol::detection_condition(
                    &p.generate(guess_dim)?,
                    spec.noise_floor,
                    NoiseKind::General,
                )?);
            }
            let r = protocol::run_epsilon_protocol(&p, &scaled.noise_bounds(), guess_dim, guess_dim)?;
            if r.detected_m == target {
                successes += 1;
            }
        }
        let c = condition.expect("trials ≥ 1");
        rows.push(AmplitudeSweepRow {
            scale,
            signal_strength: c.signal_strength,
            condition_holds: c.satisfied,
            success_rate: successes as f64 / trials as f64,
        });
    }
    Ok(AmplitudeSweep { guess_dim, required_scale, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian;
    use crate::protocol::{run_epsilon_protocol, run_protocol};
    use crate::spectral::error_measure;
    use crate::borel::BorelSet;

    fn spec(seed: u64) -> InstanceSpec {
        InstanceSpec {
            seed,
            n_atoms: 12,
            spectrum_layout: SpectrumLayout::Uniform([-5.0, 5.0]),
            subspace: SubspaceSpec::Count(3),
            trial_dim: 4,
            noise_scale: 0.1,
            delta_scale: 0.01,
        }
    }

    pub(crate) fn demo() -> FilterDiagSpec {
        FilterDiagSpec {
            frequencies: vec![-1.0, 0.3, 1.5],
            amplitudes: vec![1.0, 1.0, 1.0],
            samples: 64,
            time_step: 0.25,
            noise_floor: 0.0,
            seed: 0,
            max_filters: 8,
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let a = gen_instance(&spec(5)).unwrap();
        let b = gen_instance(&spec(5)).unwrap();
        assert_eq!(a.model, b.model);
        assert_eq!(a.trial.coefficients(), b.trial.coefficients());
        assert_eq!(a.delta_b.matrix(), b.delta_b.matrix());
        let c = gen_instance(&spec(6)).unwrap();
        assert_ne!(a.model, c.model);
    }

    #[test]
    fn noise_free_spec_has_no_noise() {
        let s = InstanceSpec { noise_scale: 0.0, delta_scale: 0.0, ..spec(1) };
        let t = gen_instance(&s).unwrap();
        assert_eq!(t.split().unwrap().noise.iter().map(|z| z.norm()).sum::<f64>(), 0.0);
        assert_eq!(error_measure(&t.model, &t.subspace, &t.trial, &BorelSet::real_line()).unwrap(), 0.0);
    }

    #[test]
    fn error_measure_scales_quadratically() {
        let eps = |s: f64| {
            let t = gen_instance(&InstanceSpec { noise_scale: s, ..spec(9) }).unwrap();
            error_measure(&t.model, &t.subspace, &t.trial, &BorelSet::real_line()).unwrap()
        };
        let ratio = eps(0.2) / eps(0.1);
        assert!((ratio - 4.0).abs() < 4e-10, "{ratio}");
    }

    #[test]
    fn delta_norm_matches_scale() {
        let t = gen_instance(&InstanceSpec { delta_scale: 0.3, ..spec(2) }).unwrap();
        let n = hermitian::spectral_norm(&t.delta_a).unwrap();
        assert!((n - 0.3).abs() < 1e-12);
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(gen_instance(&InstanceSpec { subspace: SubspaceSpec::Count(13), ..spec(0) }), Err(Error::InvalidSpec(_))));
        assert!(matches!(gen_instance(&InstanceSpec { trial_dim: 0, ..spec(0) }), Err(Error::InvalidSpec(_))));
        assert!(matches!(gen_instance(&InstanceSpec { noise_scale: -1.0, ..spec(0) }), Err(Error::InvalidSpec(_))));
        let empty_band = InstanceSpec { subspace: SubspaceSpec::Interval([100.0, 200.0]), ..spec(0) };
        assert!(matches!(gen_instance(&empty_band), Err(Error::InvalidSpec(_))));
        let tail = InstanceSpec { spectrum_layout: SpectrumLayout::HeavyTail { max_abs: 1e7 }, ..spec(0) };
        assert!(matches!(gen_instance(&tail), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn layouts_respect_ranges() {
        let tail = InstanceSpec { spectrum_layout: SpectrumLayout::HeavyTail { max_abs: 1e6 }, n_atoms: 40, ..spec(3) };
        let t = gen_instance(&tail).unwrap();
        assert!(t.model.atoms().iter().all(|x| x.abs() >= 1.0 && x.abs() <= 1e6));
        let cl = InstanceSpec {
            spectrum_layout: SpectrumLayout::Clustered { range: [0.0, 10.0], clusters: 2, width: 0.01 },
            ..spec(3)
        };
        assert!(gen_instance(&cl).unwrap().model.atoms().iter().all(|x| (-1.0..11.0).contains(x)));
    }

    #[test]
    fn spec_json_shape() {
        let text = r#"{"seed":1,"n_atoms":20,"spectrum_layout":{"uniform":[-1,1]},"subspace":{"count":3},"trial_M":8,"noise_scale":0.05}"#;
        let s: InstanceSpec = serde_json::from_str(text).unwrap();
        assert_eq!(s.trial_dim, 8);
        assert_eq!(s.delta_scale, 0.0);
        let bad = r#"{"seed":1,"n_atoms":20,"subspace":{"count":3},"trial_M":8,"noise_scale":0.05,"extra":1}"#;
        assert!(serde_json::from_str::<InstanceSpec>(bad).is_err());
    }

    #[test]
    fn nested_protocol_slices_exactly() {
        let p = gen_nested_protocol(&spec(4), 6).unwrap();
        assert_eq!(protocol::nesting_deviation(&p, 6).unwrap(), 0.0);
        let full = p.generate(6).unwrap();
        assert_eq!(full.b.matrix(), p.full().b.matrix());
        assert!(matches!(p.generate(7), Err(Error::ProtocolCapacity { .. })));
        let inst = p.generate(3).unwrap();
        assert!(inst.assembly_residual().unwrap() < 1e-14);
    }

    #[test]
    fn resampled_protocol_is_not_nested() {
        let p = ResampledProtocol::new(&spec(4)).unwrap();
        assert!(!p.is_nested());
        let b3 = p.generate(3).unwrap().b;
        let b2 = p.generate(2).unwrap().b;
        assert_ne!(b3.leading(2).unwrap().matrix(), b2.matrix());
    }

    #[test]
    fn brute_force_examples() {
        let model = DiscreteSpectralModel::new(vec![0.0, 1.0, 10.0]).unwrap();
        let one = SpectralSubspace::from_indices(vec![1]).unwrap();
        assert_eq!(brute_force_reference(&model, &one).unwrap(), vec![1.0]);
        let band = SpectralSubspace::band(0.5, 20.0).unwrap();
        assert_eq!(brute_force_reference(&model, &band).unwrap(), vec![10.0, 1.0]);
    }

    #[test]
    fn filter_demo_recovers_frequencies() {
        let p = filter_diag_protocol(&demo()).unwrap();
        let r = run_epsilon_protocol(&p, &NoiseBounds::Constant(0.0), 2, 8).unwrap();
        assert_eq!(r.detected_m, 3);
        let mut want = demo().frequencies;
        want.sort_by(|a, b| b.total_cmp(a));
        for (got, w) in r.estimates.values.iter().zip(&want) {
            assert!((got - w).abs() <= 1e-8 * w.abs().max(1.0), "{got} vs {w}");
        }
    }

    #[test]
    fn zero_amplitude_drops_a_frequency() {
        let spec = FilterDiagSpec { amplitudes: vec![1.0, 0.0, 1.0], ..demo() };
        let p = filter_diag_protocol(&spec).unwrap();
        let r = run_protocol(&p, 1, 8, 1e-10).unwrap();
        assert_eq!(r.detected_m, 2);
    }

    #[test]
    fn filter_spec_validation() {
        assert!(filter_diag_protocol(&FilterDiagSpec { frequencies: vec![1.0, 1.0, 2.0], ..demo() }).is_err());
        assert!(filter_diag_protocol(&FilterDiagSpec { amplitudes: vec![1.0], ..demo() }).is_err());
        assert!(filter_diag_protocol(&FilterDiagSpec { time_step: 0.0, ..demo() }).is_err());
    }

    #[test]
    fn van_der_corput_prefix() {
        let v: Vec<f64> = (0..5).map(van_der_corput).collect();
        assert_eq!(v, vec![0.0, 0.5, 0.25, 0.75, 0.125]);
    }
}
