//! Error type shared across the library.
//!
//! Recoverable conditions (bad input data, file problems, oversized search
//! spaces) are reported through [`Error`]. Violations of documented call
//! contracts (e.g. querying the SINR of a silent station) panic instead,
//! matching the usual Rust convention for programming errors.

use thiserror::Error;

/// Errors produced by constructors, file IO and capacity guards.
#[derive(Debug, Error)]
pub enum Error {
    /// A configuration value is out of range or inconsistent.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Instance data fails validation.
    #[error("invalid instance: {0}")]
    Instance(String),

    /// Two containers that must agree in size do not.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Two stations target the same user, so the profile has no
    /// association-matrix representation.
    #[error("stations {first} and {second} both target user {user}")]
    Collision {
        first: usize,
        second: usize,
        user: usize,
    },

    /// The profile space is too large to enumerate exhaustively.
    #[error("{profiles} profiles exceed the enumeration cap of {cap}")]
    CapExceeded { profiles: u128, cap: u64 },

    /// An instance file could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// Underlying IO failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
