use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested tower generators are multiplicatively dependent.
    #[error("dependent generator: {0}")]
    Dependency(String),
    /// A Weierstrass model with zero discriminant.
    #[error("singular model")]
    Singular,
    /// An internal invariant failed; this indicates a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    /// A computed result violates a classification theorem.
    #[error("verification failure: {0}")]
    Verification(String),
    /// Input combination the algorithms do not cover.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn inconsistent<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Inconsistency(msg.into()))
}
