//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument or parameter lies outside its valid domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A computed intermediate value violates an internal invariant.
    #[error("internal consistency error: {0}")]
    Internal(String),
    /// A conditioned estimator cannot collect samples at a usable rate.
    #[error("conditioning failure: {0}")]
    Conditioning(String),
}

pub type Result<T> = std::result::Result<T, Error>;
