use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("precision mismatch: {left} vs {right} scale bits")]
    PrecisionMismatch { left: u32, right: u32 },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("unsupported base {0}: digital sequences need a prime base")]
    UnsupportedBase(u32),

    #[error("digit stream `{stream}` exhausted at position {position}")]
    InsufficientDigits { stream: String, position: usize },

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("construction failed: {0}")]
    ConstructionFailed(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("insufficient precision: {0}")]
    Precision(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors caused by malformed user input rather than a failed
    /// computation.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidGrid(_) | Error::InvalidParams(_) | Error::Parse(_) | Error::UnsupportedBase(_)
        )
    }
}
