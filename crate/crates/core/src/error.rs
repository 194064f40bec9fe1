//! Error type shared across the crate.
//!
//! Failures split into two classes that map directly onto the CLI exit codes:
//! validation problems (malformed input, membership violations, unsupported
//! sizes) exit with code 1, numerical-tolerance problems (non-convergence,
//! ambiguous clusters, residuals above threshold) exit with code 2.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The input is malformed or outside the operation's domain.
    #[error("{0}")]
    Validation(String),
    /// The computation ran but a numerical tolerance was violated.
    #[error("{0}")]
    Tolerance(String),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn tolerance(msg: impl Into<String>) -> Self {
        Error::Tolerance(msg.into())
    }

    /// Process exit code the CLI uses for this failure class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) => 1,
            Error::Tolerance(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
