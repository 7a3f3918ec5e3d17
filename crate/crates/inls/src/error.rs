use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum InlsError {
    /// Bad user input: configs, exponents, unknown names.
    #[error("validation error: {0}")]
    Validation(String),
    /// Numerical abort: non-finite values, monitor breach, failed identity.
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, InlsError>;
