use thiserror::Error;

/// Errors produced by the numerical and I/O layers.
#[derive(Error, Debug)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("iteration did not converge: {0}")]
    NonConvergence(String),

    #[error("band limit exceeded: {0}")]
    BandExceeded(String),

    #[error("partition mismatch: {0}")]
    PartitionMismatch(String),

    #[error("block structure violated (max deviation {max_deviation:.3e}, tolerance {tolerance:.3e})")]
    BlockStructure { max_deviation: f64, tolerance: f64 },

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
