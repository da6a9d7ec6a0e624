//! File formats: instance JSON, detection and bounds reports, sweep CSV.
//!
//! Every real number is written with 17 significant digits, which is enough
//! to reproduce the IEEE-754 double bit for bit. Non-finite values become
//! `null`.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

use crate::bounds::{EigenvalueBounds, RowAssessment};
use crate::error::{Error, Result};
use crate::hermitian::{CMatrix, HermitianMatrix};
use crate::protocol::{DetectionResult, SweepTrace};
use crate::spectral::{DiscreteSpectralModel, GroundTruth, Selection, SpectralSubspace, TrialMap};

/// Pretty-printing JSON formatter with fixed 17-digit floats.
pub struct Digits17<'a> {
    inner: serde_json::ser::PrettyFormatter<'a>,
}

impl Default for Digits17<'_> {
    fn default() -> Self {
        Digits17 { inner: serde_json::ser::PrettyFormatter::with_indent(b"  ") }
    }
}

fn write_real<W: ?Sized + Write>(writer: &mut W, value: f64) -> io::Result<()> {
    if value.is_finite() {
        write!(writer, "{}", format_real(value))
    } else {
        writer.write_all(b"null")
    }
}

/// `{:.16e}`, i.e. 17 significant digits.
pub fn format_real(value: f64) -> String {
    format!("{value:.16e}")
}

impl Formatter for Digits17<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write_real(writer, value)
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        write_real(writer, f64::from(value))
    }

    fn begin_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_array(writer)
    }

    fn end_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object(writer)
    }

    fn end_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object_value(writer)
    }
}

pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Digits17::default());
    value.serialize(&mut ser).map_err(|e| Error::Io(e.to_string()))?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let text = to_json_string(value)?;
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidSpec(format!("{}: {e}", path.display())))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub atoms: Vec<f64>,
}

/// Complex matrix as row-major real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexMatrixFile {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl ComplexMatrixFile {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let part = |f: fn(&Complex64) -> f64| (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect()).collect();
        ComplexMatrixFile { re: part(|z| z.re), im: part(|z| z.im) }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        let rows = self.re.len();
        let cols = self.re.first().map_or(0, Vec::len);
        let ragged = |p: &Vec<Vec<f64>>| p.len() != rows || p.iter().any(|r| r.len() != cols);
        if ragged(&self.re) || ragged(&self.im) {
            return Err(Error::DimensionMismatch("re/im parts are ragged or differ in shape".into()));
        }
        Ok(DMatrix::from_fn(rows, cols, |i, j| Complex64::new(self.re[i][j], self.im[i][j])))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaFile {
    pub delta_a: ComplexMatrixFile,
    pub delta_b: ComplexMatrixFile,
}

pub const MODEL_FILE: &str = "model.json";
pub const TRIAL_FILE: &str = "trial.json";
pub const SUBSPACE_FILE: &str = "subspace.json";
pub const DELTA_FILE: &str = "delta.json";

/// Paths of the four instance files in `dir`.
pub fn instance_paths(dir: &Path) -> [PathBuf; 4] {
    [MODEL_FILE, TRIAL_FILE, SUBSPACE_FILE, DELTA_FILE].map(|f| dir.join(f))
}

pub fn save_instance(dir: &Path, truth: &GroundTruth) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let [model, trial, subspace, delta] = instance_paths(dir);
    write_json(&model, &ModelFile { atoms: truth.model.atoms().to_vec() })?;
    write_json(&trial, &ComplexMatrixFile::from_matrix(truth.trial.coefficients()))?;
    write_json(&subspace, truth.subspace.selection())?;
    write_json(
        &delta,
        &DeltaFile {
            delta_a: ComplexMatrixFile::from_matrix(truth.delta_a.matrix()),
            delta_b: ComplexMatrixFile::from_matrix(truth.delta_b.matrix()),
        },
    )
}

/// Reads an instance directory. A missing `delta.json` means `δA = δB = 0`.
pub fn load_instance(dir: &Path) -> Result<GroundTruth> {
    let [model, trial, subspace, delta] = instance_paths(dir);
    let model = DiscreteSpectralModel::new(read_json::<ModelFile>(&model)?.atoms)?;
    let trial = TrialMap::new(read_json::<ComplexMatrixFile>(&trial)?.to_matrix()?)?;
    let subspace = SpectralSubspace::from_selection(read_json::<Selection>(&subspace)?)?;
    let m = trial.trial_dim();
    let (delta_a, delta_b) = if delta.exists() {
        let d: DeltaFile = read_json(&delta)?;
        (HermitianMatrix::new(d.delta_a.to_matrix()?)?, HermitianMatrix::new(d.delta_b.to_matrix()?)?)
    } else {
        (HermitianMatrix::zeros(m), HermitianMatrix::zeros(m))
    };
    Ok(GroundTruth { model, subspace, trial, delta_a, delta_b })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionReport {
    #[serde(rename = "M")]
    pub guess_dim: usize,
    pub m: usize,
    pub threshold: f64,
    pub estimates: Vec<f64>,
    pub flags: Vec<String>,
}

impl From<&DetectionResult> for DetectionReport {
    fn from(r: &DetectionResult) -> Self {
        DetectionReport {
            guess_dim: r.guess_dimension,
            m: r.detected_m,
            threshold: r.threshold_used,
            estimates: r.estimates.values.clone(),
            flags: r.flags.iter().map(|f| f.name().to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReportRow {
    pub i: usize,
    pub tilde: f64,
    pub lower: f64,
    pub upper: f64,
    pub true_error: Option<f64>,
    pub enclosed: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub method: String,
    /// The shared denominator of the family.
    pub margin: f64,
    pub tolerance: f64,
    pub rows: Vec<BoundsReportRow>,
    pub flags: Vec<String>,
}

impl BoundsReport {
    pub fn new(bounds: &EigenvalueBounds, assessment: Option<&[RowAssessment]>, tolerance: f64) -> Self {
        let rows = bounds
            .rows
            .iter()
            .enumerate()
            .map(|(k, r)| BoundsReportRow {
                i: r.i,
                tilde: r.tilde,
                lower: r.lower,
                upper: r.upper,
                true_error: assessment.map(|a| a[k].true_error),
                enclosed: assessment.map(|a| a[k].enclosed),
            })
            .collect();
        let flags = bounds
            .flags
            .iter()
            .map(|f| match f {
                crate::bounds::BoundFlag::AssumptionViolated { which, index, .. } => {
                    format!("AssumptionViolated({which}, i={index})")
                }
            })
            .collect();
        BoundsReport { method: bounds.method.name().to_string(), margin: bounds.denominator, tolerance, rows, flags }
    }
}

pub const SWEEP_HEADER: &str = "M,lambda_m_BMm,epsilon_M,ratio,detected_m";

/// CSV with one row per guess dimension; an undefined ratio is left empty.
pub fn sweep_csv(trace: &SweepTrace) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in &trace.rows {
        let ratio = r.ratio.map(format_real).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.guess_dim,
            format_real(r.lambda_m),
            format_real(r.epsilon),
            ratio,
            r.detected_m
        ));
    }
    out
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
