use thiserror::Error;

/// Errors raised by the analysis and simulation layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("non-finite field values after step {0}")]
    Overflow(usize),

    #[error("scheme {scheme} requires a {expected} medium")]
    KindMismatch {
        scheme: &'static str,
        expected: &'static str,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
