use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: asymmetry {asymmetry:e} exceeds tolerance {tolerance:e}")]
    NonHermitianInput { asymmetry: f64, tolerance: f64 },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("empty matrix")]
    Empty,

    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),

    #[error("weight matrix is not positive definite: smallest eigenvalue {smallest:e} <= threshold {threshold:e}")]
    IndefiniteWeight { smallest: f64, threshold: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("eigensolver failed to converge")]
    NoConvergence,

    #[error("invalid subspace selection: {0}")]
    InvalidSubspace(String),

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("instance carries no ground truth")]
    MissingGroundTruth,

    #[error("target subspace is zero-dimensional")]
    EmptySubspace,

    #[error("trial dimension {trial} differs from subspace dimension {subspace}; refine the instance first")]
    TrialDimensionMismatch { subspace: usize, trial: usize },

    #[error("generalized eigenvalue problem is ill-conditioned: margin {margin:e} <= 0")]
    IllConditioned { margin: f64 },

    #[error("selected subspace is not the band [{a}, {b}]")]
    NotABand { a: f64, b: f64 },

    #[error("atom {atom} lies outside the operator bounds [{e_min}, {e_max}]")]
    BoundViolatedByModel { atom: f64, e_min: f64, e_max: f64 },

    #[error("weight matrix is singular: lambda_m(B) = {0:e} <= 0")]
    SingularWeight(f64),

    #[error("expected {expected} true eigenvalues, got {got}")]
    TrueEigenvalueCount { expected: usize, got: usize },

    #[error("detection threshold must be positive, got {0}")]
    NonPositiveThreshold(f64),

    #[error("noise bound for guess dimension {dim} is unavailable or negative")]
    InvalidNoiseBoundValue { dim: usize },

    #[error("protocol is not nested")]
    NotNested,

    #[error("basis columns are not orthonormal: deviation {0:e}")]
    NonOrthonormalBasis(f64),

    #[error("guess dimension {requested} exceeds protocol capacity {capacity}")]
    ProtocolCapacity { requested: usize, capacity: usize },

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("i/o: {0}")]
    Io(String),
}
