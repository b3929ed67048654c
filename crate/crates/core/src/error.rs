use thiserror::Error;

/// Errors raised by the series engine, the builders and the numeric toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The caller combined incompatible inputs (denominator mismatch, unknown id, bad flag).
    #[error("usage error: {0}")]
    Usage(String),
    /// A mathematical precondition failed (non-unit constant term, a = 0, q outside (0,1)).
    #[error("domain error: {0}")]
    Domain(String),
    /// A floating-point computation produced NaN or overflowed.
    #[error("numeric error: {0}")]
    Numeric(String),
    /// Canonical text could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
