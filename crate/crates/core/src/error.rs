//! Error type shared by every module of the toolkit.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Toolkit-wide error. The variants map onto the CLI exit-code contract:
/// usage errors, parse errors and infeasible requests are distinguishable
/// by the caller.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input data. `line` is 1-based and counts every physical
    /// line of the input, including a header line when present.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The caller violated an operation's contract (bad parameter range,
    /// width mismatch, mixed cardinalities, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// Input data that is structurally valid but internally inconsistent,
    /// e.g. a frequent family that is missing a subset's count.
    #[error("integrity error: {0}")]
    Integrity(String),

    /// A requested plan cannot be satisfied, e.g. a failure target that no
    /// (generations, runs) combination reaches.
    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn usage(message: impl Into<String>) -> Self {
        Error::Usage(message.into())
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
