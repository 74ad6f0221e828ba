use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("series or iteration did not converge: {0}")]
    Convergence(String),
    #[error("gapless mode: {0}")]
    Gapless(String),
    #[error("critical point: {0}")]
    Critical(String),
    #[error("winding number not quantized: {0}")]
    NotQuantized(String),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("system too large: {0}")]
    Size(String),
    #[error("eigenvalue outside [-1, 1] beyond tolerance: {0}")]
    EigenvalueRange(String),
    #[error("reduced density matrix trace is {0}, expected 1")]
    NonUnitTrace(f64),
    #[error("ill-conditioned design matrix (condition number {0:e})")]
    IllConditioned(f64),
    #[error("non-positive data: {0}")]
    NonPositive(String),
    #[error("marginal case: {0}")]
    Marginal(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
