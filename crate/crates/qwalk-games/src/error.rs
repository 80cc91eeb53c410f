//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A matrix that must be unitary is not. `detail` names the constraint
    /// that failed (an Eq.-level diagnostic, not just a norm).
    #[error("operator is not unitary: {detail}")]
    NotUnitary { detail: String },

    /// A state vector whose norm must be 1 deviates by more than the
    /// allowed tolerance. Normalization is never repaired silently.
    #[error("state is not normalized: |norm^2 - 1| = {deviation:.3e}")]
    NotNormalized { deviation: f64 },

    /// A probability (or probability vector component) outside [0, 1].
    #[error("invalid probability {value} for {what}")]
    InvalidProbability { what: &'static str, value: f64 },

    /// A run specification that cannot be resolved into a game config.
    /// The message names the offending key.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Wrapper for I/O failures in the command-line layer.
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
