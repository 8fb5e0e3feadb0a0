use alloc::string::String;

/// Errors raised by every module of the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not Hermitian (residual {residual:e})")]
    NonHermitianInput { residual: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("matrix is singular or not positive definite (min eigenvalue {min_eigenvalue:e})")]
    SingularMatrix { min_eigenvalue: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("malformed matrix shape: {0}")]
    InvalidShape(String),

    #[error("weight {0} is outside [0, 1]")]
    WeightOutOfRange(f64),

    #[error("invalid bounds: {0}")]
    BadBounds(String),

    #[error("argument must be positive, got {0}")]
    NonPositiveArgument(f64),

    #[error("degenerate interval: m = M = {0}")]
    DegenerateInterval(f64),

    #[error("unknown inequality id `{0}`")]
    UnknownInequality(String),

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("malformed map spec: {0}")]
    MalformedSpec(String),

    #[error("unknown map kind `{0}`")]
    UnknownKind(String),

    #[error("incompatible entries: {0}")]
    IncompatibleEntries(String),

    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
