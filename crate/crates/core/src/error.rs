use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid evaluation point: {0}")]
    InvalidPoint(String),

    #[error("invalid deformation parameter: {0}")]
    InvalidDeform(String),

    /// A formula is undefined at the requested arguments.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unknown bound id `{0}`")]
    UnknownBound(String),

    #[error("unknown difference function `{0}`")]
    UnknownDiff(String),

    /// The point (or grid) lies outside the validity region of a bound.
    #[error("region error: {0}")]
    Region(String),

    #[error("invalid grid region: {0}")]
    InvalidRegion(String),

    #[error(
        "no sign change found for `{diff_id}` at delta {delta:e} (max {max_value:e}, min {min_value:e})"
    )]
    NotFound {
        diff_id: String,
        delta: f64,
        max_value: f64,
        min_value: f64,
    },

    #[error("matrix is not positive definite (min eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("eigendecomposition failed: {0}")]
    Eigen(String),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("invalid sandwich constants: {0}")]
    InvalidSandwich(String),

    #[error("matrices violate the declared spectral sandwich")]
    SandwichViolation,

    #[error("matrix parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
