use thiserror::Error;

/// Errors produced by the numerical layers of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },

    /// A numerical routine failed to reach its tolerance target.
    #[error("numerical failure in {op}: {msg}")]
    Numerical { op: &'static str, msg: String },

    /// A sampling grid is too coarse for the requested evaluation.
    #[error("grid resolution too coarse in {op}: {msg}")]
    Resolution { op: &'static str, msg: String },

    /// The printed quantization condition degenerates (alpha = 0 in paper
    /// mode collapses the right-hand side; use `limit_condition`).
    #[error("degenerate right-hand side: {0}")]
    DegenerateRhs(String),

    /// A profile violates the admissibility assumptions.
    #[error("invalid surface profile: {0}")]
    InvalidProfile(String),
}

impl Error {
    pub fn domain(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain { op, msg: msg.into() }
    }

    pub fn numerical(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Numerical { op, msg: msg.into() }
    }

    pub fn resolution(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Resolution { op, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
