use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("frame is degenerate: rank {rank} < {expected}")]
    DegenerateFrame { rank: usize, expected: usize },

    #[error("metric is not symmetric positive definite")]
    NonPositiveDefinite,

    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("eigenvalue {needed} is required but the spectrum is only complete up to {cutoff}")]
    CutoffExceeded { needed: f64, cutoff: f64 },

    #[error("cone component {component} has no symmetry group dimension")]
    MissingSymmetryData { component: usize },

    #[error("cone component {component} has no stratum dimension and the cone is not rigid")]
    MissingStratumData { component: usize },

    #[error("inconsistent cone data: {0}")]
    InconsistentCone(String),

    #[error("area must be positive, got {0}")]
    NonPositiveArea(f64),

    #[error("rate {rate} lies on the wall of critical rates (indicial root {root})")]
    RateOnWall { rate: f64, root: f64 },

    #[error("index evaluates to the non-integer {0}; the kernel tables are inconsistent")]
    NonIntegerIndex(String),

    #[error("quadrature error estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    QuadratureFailure { estimate: f64, tolerance: f64 },

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("decay fit is unstable: residual {residual:e} exceeds {limit}")]
    FitUnstable { residual: f64, limit: f64 },

    #[error("degenerate angles: every angle must lie strictly inside (0, pi)")]
    DegenerateAngles,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for failures of a numerical method, as opposed to rejected input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::QuadratureFailure { .. }
                | Error::NoConvergence { .. }
                | Error::FitUnstable { .. }
                | Error::NonIntegerIndex(_)
        )
    }

    /// Short stable identifier used in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegenerateFrame { .. } => "DegenerateFrame",
            Error::NonPositiveDefinite => "NonPositiveDefinite",
            Error::InvalidMesh(_) => "InvalidMesh",
            Error::CutoffExceeded { .. } => "CutoffExceeded",
            Error::MissingSymmetryData { .. } => "MissingSymmetryData",
            Error::MissingStratumData { .. } => "MissingStratumData",
            Error::InconsistentCone(_) => "InconsistentCone",
            Error::NonPositiveArea(_) => "NonPositiveArea",
            Error::RateOnWall { .. } => "RateOnWall",
            Error::NonIntegerIndex(_) => "NonIntegerIndex",
            Error::QuadratureFailure { .. } => "QuadratureFailure",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::FitUnstable { .. } => "FitUnstable",
            Error::DegenerateAngles => "DegenerateAngles",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Parse { .. } => "Parse",
            Error::Io(_) => "Io",
            Error::Json(_) => "Json",
            Error::Csv(_) => "Csv",
        }
    }
}
