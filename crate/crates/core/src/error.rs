use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument violates a mathematical precondition (non-prime where a
    /// prime is required, `ell == p`, zero where a positive value is needed).
    #[error("domain error: {0}")]
    Domain(String),

    /// Matrices with different dimension or modulus were combined.
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not invertible")]
    NotInvertible,

    /// A group enumeration would exceed the configured element cap.
    #[error("enumeration cap of {cap} elements exceeded")]
    CapExceeded { cap: usize },

    /// Malformed structured input (generator sets, scenarios, descriptors).
    #[error("malformed input: {0}")]
    Malformed(String),

    /// An invariant that group theory guarantees did not hold.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
