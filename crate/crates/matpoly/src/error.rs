use thiserror::Error;

/// Crate-wide error type.
///
/// `Integrity` is reserved for situations where the inputs passed structural
/// validation but fail a mathematical consistency check that genuine data
/// cannot fail (for example, a linear system over Q(T) that is inconsistent
/// at a specialization point). Callers can rely on that distinction: a
/// computation never silently repairs inconsistent data.
#[derive(Debug, Error)]
pub enum Error {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("matroid is not simple: {0}")]
    NotSimple(String),

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("integrity check failed: {0}")]
    Integrity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
