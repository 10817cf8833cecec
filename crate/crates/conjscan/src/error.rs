//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong across the library and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    /// Two values built on tori with different aspect ratios were combined.
    #[error("torus geometry mismatch: alpha = {0} vs alpha = {1}")]
    GeometryMismatch(f64, f64),

    /// A constructor or command received an out-of-contract argument.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An operation required a divergence-free field and got one that is not.
    #[error("field is not divergence-free: relative residual {residual:.3e} exceeds {tol:.3e}")]
    NotDivergenceFree { residual: f64, tol: f64 },

    /// A nonzero field was required (e.g. the test direction of the criterion).
    #[error("zero field where a nonzero field is required")]
    ZeroField,

    /// The criterion value is not positive, so no conjugate-time bound exists.
    #[error("criterion inconclusive: mc = {0:.6e} is not positive, no bound")]
    Inconclusive(f64),

    /// A streamline computation ran into a point where |grad psi| is ~ 0.
    #[error("stagnation encountered: |grad psi| = {0:.3e} below the floor")]
    Stagnation(f64),

    /// The trajectory did not return to the section within the time budget.
    #[error("no return to the section within max_time = {0}")]
    NoReturn(f64),

    /// The level-set tracer failed to close the contour.
    #[error("contour failed to close: {0}")]
    ContourNotClosed(String),

    /// A streamline level outside the valid range of the stream function.
    #[error("level c = {0} outside the valid range ({1}, {2})")]
    InvalidLevel(f64, f64, f64),

    /// Malformed input data (field files, CLI values).
    #[error("parse error: {0}")]
    Parse(String),

    /// Filesystem-level failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
