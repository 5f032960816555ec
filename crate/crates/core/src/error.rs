use thiserror::Error;

/// Errors raised by the region evaluators, parsers and the CLI front end.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TwrcError {
    /// A numeric input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A channel parameter violates its invariant. `field` names the parameter.
    #[error("{field}: {reason}")]
    InvalidChannel { field: &'static str, reason: &'static str },

    /// Bad caller-supplied argument (grid size, scheme name, mismatched grids, ...).
    #[error("argument error: {0}")]
    Argument(String),

    /// The requested computation would exceed a size limit.
    #[error("resource error: {0}")]
    Resource(String),

    /// Failure writing output or reading input files.
    #[error("io error: {0}")]
    Io(String),

    /// Malformed channel file.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, TwrcError>;
