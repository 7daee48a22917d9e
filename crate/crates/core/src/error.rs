use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or mismatched input: bad generator index, context mismatch,
    /// wrong dimensions.
    #[error("input error: {0}")]
    Input(String),
    /// Input outside the domain of the operation: a non-automorphism where an
    /// automorphism is required, a non-involution, a non-unimodular matrix.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    /// A bounded search ran out of candidates.
    #[error("search exhausted: {0}")]
    Search(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
