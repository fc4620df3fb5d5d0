//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by solvers, density assembly and theorem checks.
#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the supported domain of a kernel or operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative solver failed to reach its tolerance.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// Requested particle number does not close a degenerate shell.
    #[error("open shell: N={requested} splits a degenerate level; nearest closed shells are N={below} and N={above}")]
    OpenShell {
        requested: u64,
        below: u64,
        above: u64,
    },

    /// Inconsistent grids or mismatched field lengths.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// Invalid system description or scenario configuration.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// A diagnostic identity failed beyond its tolerance.
    #[error("identity violation: {0}")]
    Identity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
