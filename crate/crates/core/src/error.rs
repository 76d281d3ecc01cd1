//! Error types shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("argument {0} is within 1e-12 of a pole")]
    Pole(String),

    #[error("requested tolerance {requested:e} not achievable ({detail})")]
    Accuracy { requested: f64, detail: String },

    #[error("non-finite component in input {0}")]
    NonFinite(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("completeness certificate failed: expected {expected} zeros, found {found} ({detail})")]
    Completeness {
        expected: i64,
        found: usize,
        detail: String,
    },

    #[error("zero of target function within {min_modulus:e} of the contour")]
    ContourTooClose { min_modulus: f64 },

    #[error("contour argument sum did not converge to a multiple of 2 pi")]
    NonConvergentContour,

    #[error("Newton iterate left the inflated seed box")]
    Divergence,

    #[error("numerically zero derivative in Newton step")]
    ZeroDerivative,

    #[error("winding count {0} > 1 in a minimal box; multiple zeros unsupported")]
    MultiplicityUnsupported(i64),

    #[error("zero list incomplete: {0}")]
    IncompleteZeroList(String),

    #[error("zero list does not cover the required interval: {0}")]
    InsufficientCoverage(String),

    #[error("no admissible root: {0}")]
    NoRoot(String),

    #[error("|zeta| < 1e-10 on the argument-tracking path at t = {t}")]
    PathThroughZero { t: f64 },

    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),

    #[error("data format mismatch: {0}")]
    DataFormat(String),
}
