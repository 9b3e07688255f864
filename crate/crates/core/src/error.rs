//! Crate-wide error type and result alias.

use thiserror::Error;

/// Errors produced by parsing, validation, evaluation, and I/O.
///
/// The variants map onto the command-line exit-code contract: input
/// problems ([`Error::Parse`], [`Error::Invalid`], [`Error::Io`]) exit
/// with code 2, resource-limit aborts ([`Error::Resource`]) with code 3,
/// and arithmetic failures ([`Error::Math`]) with code 4.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input that could not be parsed at all.
    #[error("parse error: {0}")]
    Parse(String),

    /// Structurally well-formed input that violates a semantic invariant.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A configurable resource limit (tensor entries, enumeration size)
    /// was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// An arithmetic operation failed: division by a non-invertible
    /// element, or an internal consistency violation such as a value with
    /// an unexpected δ component.
    #[error("arithmetic error: {0}")]
    Math(String),

    /// Underlying I/O failure while reading inputs.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code associated with this error kind.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Invalid(_) | Error::Io(_) => 2,
            Error::Resource(_) => 3,
            Error::Math(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
