//! `subspectra`: generate instances, detect dimensions, evaluate bounds,
//! sweep guess dimensions and run the verification suites.
//!
//! Exit codes: 0 success, 1 a verification suite failed, 2 invalid input,
//! 3 i/o failure, 4 detection budget exhausted, 5 ill-conditioned pencil,
//! 6 protocol is not nested.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use subspectra::bounds::{self, BandParams, BoundMethod, EigenvalueBounds, ENCLOSURE_TOL};
use subspectra::io::{self, BoundsReport, DetectionReport};
use subspectra::protocol::{self, NoiseBounds, SubspaceProtocol};
use subspectra::spectral::{GepInstance, GroundTruth};
use subspectra::synth::{self, InstanceSpec, NestedProtocol, ResampledProtocol, SpectrumLayout, SubspaceSpec};
use subspectra::verify::{self, SuiteReport, VerifyConfig};
use subspectra::Error;

#[derive(Parser, Debug)]
#[command(name = "subspectra", version, about = "Eigenvalue error bounds and dimension detection for subspace methods")]
struct Cli {
    /// Default seed for every command.
    #[arg(long, global = true, env = "SUBSPECTRA_SEED", default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a replayable instance directory.
    Synth(SynthArgs),
    /// Run dimension detection on an instance.
    Detect(DetectArgs),
    /// Evaluate eigenvalue error bounds against the ground truth.
    Bounds(BoundsArgs),
    /// Record λ_m(B_M), ε_M and their ratio over a range of guess dimensions.
    Sweep(SweepArgs),
    /// Run the property suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Layout {
    Uniform,
    Clustered,
    HeavyTail,
}

#[derive(Args, Debug)]
struct SynthArgs {
    /// Instance spec as JSON; replaces the flags below.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long, default_value_t = 20)]
    atoms: usize,
    /// Subspace dimension m* (the m* lowest atoms).
    #[arg(long, default_value_t = 3)]
    m: usize,
    /// Select the subspace as an interval instead of by count.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true, conflicts_with = "m")]
    interval: Option<Vec<f64>>,
    /// Trial dimension.
    #[arg(long = "M", default_value_t = 8)]
    trial_dim: usize,
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    #[arg(long, value_enum, default_value_t = Layout::Uniform)]
    layout: Layout,
    /// Atom range for the uniform and clustered layouts, or max |λ| for heavy_tail.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true, default_values_t = [-10.0, 10.0])]
    range: Vec<f64>,
    #[arg(long, default_value = "instance")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct DetectArgs {
    /// Instance directory written by `synth`.
    #[arg(long, default_value = "instance")]
    instance: PathBuf,
    /// Fixed detection threshold.
    #[arg(long, group = "bound")]
    threshold: Option<f64>,
    /// ε_M table: JSON array, or {"constant": x} / {"table": [...]}.
    #[arg(long = "eps-table", group = "bound")]
    eps_table: Option<PathBuf>,
    /// Constant ε_M.
    #[arg(long, group = "bound")]
    eps: Option<f64>,
    #[arg(long = "m-start", default_value_t = 1)]
    m_start: usize,
    /// Largest guess dimension; defaults to the trial dimension of the instance.
    #[arg(long = "m-max")]
    m_max: Option<usize>,
    #[arg(long, default_value = "detection.json")]
    out: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq)]
enum MethodArg {
    Master,
    Band,
    Bounded,
    Alternative,
    MatrixForm,
    All,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long, default_value = "instance")]
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodArg::All)]
    method: MethodArg,
    /// Band [a, b]; defaults to the subspace band.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    band: Option<Vec<f64>>,
    #[arg(long = "e-min", allow_hyphen_values = true)]
    e_min: Option<f64>,
    #[arg(long = "e-max", allow_hyphen_values = true)]
    e_max: Option<f64>,
    /// Enclosure tolerance relative to max(1, |λ|).
    #[arg(long, default_value_t = ENCLOSURE_TOL)]
    tol: f64,
    #[arg(long, default_value = "bounds.json")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Instance directory; guess dimension M uses the first M trial vectors.
    #[arg(long, conflicts_with = "spec")]
    instance: Option<PathBuf>,
    /// Instance spec; builds a nested protocol, or a resampled one with `--resample`.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Draw fresh trial vectors for every M (not nested).
    #[arg(long, requires = "spec")]
    resample: bool,
    /// Refinement dimension; defaults to m*.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long = "from")]
    from: Option<usize>,
    #[arg(long = "to")]
    to: Option<usize>,
    #[arg(long, default_value_t = 1e-8, group = "bound")]
    eps: f64,
    #[arg(long = "eps-table", group = "bound")]
    eps_table: Option<PathBuf>,
    #[arg(long, default_value = "sweep.csv")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Case count for every suite (default: the acceptance sizes).
    #[arg(long)]
    trials: Option<usize>,
    /// Comma-separated criteria to run (default: all).
    #[arg(long, value_delimiter = ',')]
    criteria: Vec<u8>,
    /// Use ε_M tables below the true noise norm in the lower-bound suite.
    #[arg(long = "inject-invalid-bounds")]
    inject_invalid_bounds: bool,
    /// Do not fail the lower-bound suite on InvalidNoiseBound runs.
    #[arg(long = "allow-invalid-bounds")]
    allow_invalid_bounds: bool,
    #[arg(long, default_value = "verify.json")]
    out: PathBuf,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io(_) => 3,
            Error::IllConditioned { .. } => 5,
            Error::NotNested => 6,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Synth(a) => cmd_synth(cli.seed, a),
        Command::Detect(a) => cmd_detect(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Verify(a) => cmd_verify(cli.seed, a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn synth_spec(seed: u64, a: &SynthArgs) -> Result<InstanceSpec, Failure> {
    if let Some(path) = &a.spec {
        return Ok(io::read_json(path)?);
    }
    let [lo, hi] = [a.range[0], a.range[1]];
    let spectrum_layout = match a.layout {
        Layout::Uniform => SpectrumLayout::Uniform([lo, hi]),
        Layout::Clustered => SpectrumLayout::Clustered { range: [lo, hi], clusters: 3, width: 0.01 * (hi - lo).abs() },
        Layout::HeavyTail => SpectrumLayout::HeavyTail { max_abs: hi.abs() },
    };
    let subspace = match &a.interval {
        Some(ab) => SubspaceSpec::Interval([ab[0], ab[1]]),
        None => SubspaceSpec::Count(a.m),
    };
    Ok(InstanceSpec {
        seed,
        n_atoms: a.atoms,
        spectrum_layout,
        subspace,
        trial_dim: a.trial_dim,
        noise_scale: a.noise,
        delta_scale: a.delta,
    })
}

/// The pencil the bound families are evaluated on: trial dimension reduced
/// to m* through the leading eigenvectors of B when it exceeds m*.
fn square_instance(truth: &GroundTruth) -> Result<GepInstance, Failure> {
    let instance = truth.assemble()?;
    let m = truth.subspace_dim()?;
    if m > instance.dim() {
        return Err(fail(
            5,
            format!("subspace dimension {m} exceeds trial dimension {}; the pencil cannot be well conditioned", instance.dim()),
        ));
    }
    if m < instance.dim() {
        eprintln!("note: refining trial dimension {} to m* = {m} via the leading eigenvectors of B", instance.dim());
        return Ok(protocol::refine(&instance, m)?.instance);
    }
    Ok(instance)
}

fn cmd_synth(seed: u64, a: &SynthArgs) -> CmdResult {
    let spec = synth_spec(seed, a)?;
    let truth = synth::gen_instance(&spec)?;
    io::save_instance(&a.out, &truth)?;
    let m_star = truth.subspace_dim()?;
    let instance = truth.assemble()?;
    let margin = if m_star <= instance.dim() {
        let squared = if m_star < instance.dim() { protocol::refine(&instance, m_star)?.instance } else { instance.clone() };
        bounds::check_well_conditioned(&squared)?.margin
    } else {
        f64::NAN
    };
    println!(
        "n={} M={} m*={} margin={} -> {}",
        truth.model.dim(),
        instance.dim(),
        m_star,
        io::format_real(margin),
        a.out.display()
    );
    Ok(0)
}

fn read_noise_bounds(path: &Path) -> Result<NoiseBounds, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| fail(3, format!("{}: {e}", path.display())))?;
    if let Ok(b) = serde_json::from_str::<NoiseBounds>(&text) {
        return Ok(b);
    }
    serde_json::from_str::<Vec<f64>>(&text)
        .map(NoiseBounds::Table)
        .map_err(|e| fail(2, format!("{}: expected an ε_M table: {e}", path.display())))
}

fn cmd_detect(a: &DetectArgs) -> CmdResult {
    let truth = io::load_instance(&a.instance)?;
    let p = NestedProtocol::from_instance(truth.assemble()?);
    let m_max = a.m_max.unwrap_or(p.full().dim());
    let result = match (a.threshold, &a.eps_table, a.eps) {
        (Some(t), _, _) => protocol::run_protocol(&p, a.m_start, m_max, t)?,
        (_, Some(path), _) => protocol::run_epsilon_protocol(&p, &read_noise_bounds(path)?, a.m_start, m_max)?,
        (_, _, Some(e)) => protocol::run_epsilon_protocol(&p, &NoiseBounds::Constant(e), a.m_start, m_max)?,
        _ => return Err(fail(2, "one of --threshold, --eps-table or --eps is required")),
    };
    let report = DetectionReport::from(&result);
    io::write_json(&a.out, &report)?;
    println!("M={} m={} flags={:?}", report.guess_dim, report.m, report.flags);
    if result.budget_exhausted() {
        eprintln!("error: every direction detected up to M = {}; raise --m-max", result.guess_dimension);
        return Ok(4);
    }
    Ok(0)
}

fn band_params(a: &BoundsArgs, truth: &GroundTruth) -> Option<BandParams> {
    let derived = BandParams::from_truth(truth);
    let atoms = truth.model.atoms();
    let (lo, hi) = match (&a.band, derived) {
        (Some(ab), _) => (ab[0], ab[1]),
        (None, Some(p)) => (p.a, p.b),
        (None, None) => return None,
    };
    Some(BandParams {
        a: lo,
        b: hi,
        e_min: a.e_min.unwrap_or_else(|| atoms.iter().copied().fold(f64::INFINITY, f64::min)),
        e_max: a.e_max.unwrap_or_else(|| atoms.iter().copied().fold(f64::NEG_INFINITY, f64::max)),
    })
}

fn cmd_bounds(a: &BoundsArgs) -> CmdResult {
    let truth = io::load_instance(&a.instance)?;
    let instance = square_instance(&truth)?;
    let lambdas = synth::brute_force_reference(&truth.model, &truth.subspace)?;
    let band = band_params(a, &truth);
    let methods: Vec<BoundMethod> = match a.method {
        MethodArg::Master => vec![BoundMethod::Master],
        MethodArg::Band => vec![BoundMethod::Band],
        MethodArg::Bounded => vec![BoundMethod::Bounded],
        MethodArg::Alternative => vec![BoundMethod::Alternative],
        MethodArg::MatrixForm => vec![BoundMethod::MatrixForm],
        MethodArg::All => BoundMethod::ALL.to_vec(),
    };
    let mut reports = Vec::new();
    let mut ill = None;
    for method in methods {
        let needs_band = matches!(method, BoundMethod::Band | BoundMethod::Bounded);
        if needs_band && band.is_none() {
            if a.method == MethodArg::All {
                eprintln!("note: skipping {}: the subspace is not a band; pass --band", method.name());
                continue;
            }
            return Err(fail(2, format!("{} needs a band: pass --band A B", method.name())));
        }
        let b: EigenvalueBounds = match bounds::bounds_for(method, &instance, band, &lambdas) {
            Ok(b) => b,
            Err(e @ Error::IllConditioned { .. }) if a.method == MethodArg::All => {
                eprintln!("error: {}: {e}", method.name());
                ill = Some(e);
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let assessment = b.assess(&lambdas, a.tol)?;
        let enclosed = assessment.iter().all(|r| r.enclosed);
        println!("{:<12} enclosed={enclosed} margin={}", method.name(), io::format_real(b.denominator));
        reports.push(BoundsReport::new(&b, Some(&assessment), a.tol));
    }
    match (a.method, reports.len()) {
        (MethodArg::All, _) => io::write_json(&a.out, &reports)?,
        (_, 1) => io::write_json(&a.out, &reports[0])?,
        _ => {}
    }
    match ill {
        Some(e) => Err(e.into()),
        None => Ok(0),
    }
}

fn cmd_sweep(a: &SweepArgs) -> CmdResult {
    let (protocol, m_star, capacity): (Box<dyn SubspaceProtocol>, usize, usize) = match (&a.instance, &a.spec) {
        (Some(dir), _) => {
            let truth = io::load_instance(dir)?;
            let m = truth.subspace_dim()?;
            let p = NestedProtocol::from_instance(truth.assemble()?);
            let cap = p.full().dim();
            (Box::new(p), m, cap)
        }
        (None, Some(path)) => {
            let spec: InstanceSpec = io::read_json(path)?;
            let cap = a.to.unwrap_or(spec.trial_dim).max(spec.trial_dim);
            let truth = synth::gen_instance(&spec)?;
            let m = truth.subspace_dim()?;
            if a.resample {
                (Box::new(ResampledProtocol::new(&spec)?), m, cap)
            } else {
                (Box::new(synth::gen_nested_protocol(&spec, cap)?), m, cap)
            }
        }
        (None, None) => return Err(fail(2, "one of --instance or --spec is required")),
    };
    let m = a.m.unwrap_or(m_star);
    let from = a.from.unwrap_or(m.max(1));
    let to = a.to.unwrap_or(capacity);
    let bounds = match &a.eps_table {
        Some(path) => read_noise_bounds(path)?,
        None => NoiseBounds::Constant(a.eps),
    };
    let trace = protocol::sweep_guess_dimension(&protocol, m, from..=to, &bounds)?;
    io::write_text(&a.out, &io::sweep_csv(&trace))?;
    println!("{} rows, {} monotonicity violations -> {}", trace.rows.len(), trace.monotonicity_violations, a.out.display());
    Ok(0)
}

#[derive(Serialize)]
struct VerifyFile<'a> {
    seed: u64,
    trials: Option<usize>,
    allow_invalid_bounds: bool,
    inject_invalid_bounds: bool,
    passed: bool,
    suites: &'a [SuiteReport],
}

fn cmd_verify(seed: u64, a: &VerifyArgs) -> CmdResult {
    let config = VerifyConfig {
        seed,
        trials: a.trials,
        inject_invalid_bounds: a.inject_invalid_bounds,
        allow_invalid_bounds: a.allow_invalid_bounds,
    };
    let criteria: Vec<u8> = if a.criteria.is_empty() { (1..=11).collect() } else { a.criteria.clone() };
    let start = Instant::now();
    let mut suites = Vec::with_capacity(criteria.len());
    for c in criteria {
        let r = verify::run_suite(c, &config)?;
        println!(
            "{:>2} {:<24} {} cases={} violations={}  {}",
            r.criterion,
            r.name,
            if r.passed { "PASS" } else { "FAIL" },
            r.cases,
            r.violations,
            r.detail
        );
        suites.push(r);
    }
    let passed = suites.iter().all(|s| s.passed);
    io::write_json(
        &a.out,
        &VerifyFile {
            seed,
            trials: a.trials,
            allow_invalid_bounds: a.allow_invalid_bounds,
            inject_invalid_bounds: a.inject_invalid_bounds,
            passed,
            suites: &suites,
        },
    )?;
    eprintln!("verify finished in {:.2}s", start.elapsed().as_secs_f64());
    Ok(if passed { 0 } else { 1 })
}
