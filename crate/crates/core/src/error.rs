use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("measure is not null-class: {0}")]
    NonNullClass(String),
    #[error("non-orientable realization refused for orbit {0}")]
    NonOrientable(String),
    #[error("base linking table has no entry for ({0}, {1})")]
    MissingBasePair(String, String),
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
