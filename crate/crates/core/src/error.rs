use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is numerically singular (pivot {pivot:e} below tolerance {tolerance:e})")]
    SingularMatrix { pivot: f64, tolerance: f64 },

    /// The iteration cap was exhausted. `partial` holds the current
    /// approximations, which must not be trusted.
    #[error("no convergence after {iterations} iterations")]
    NoConvergence { iterations: usize, partial: Vec<Complex64> },

    #[error("point {0} lies on the numerical spectrum")]
    SpectrumHit(Complex64),

    #[error("power norm overflowed at exponent {0}; rescale the element")]
    Overflow(usize),

    #[error("grid has {0} nodes, more than the 4e6 limit")]
    GridTooLarge(usize),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid contour: {0}")]
    InvalidContour(String),

    #[error("cluster {0} is not isolated")]
    ClusterNotIsolated(usize),

    #[error("matrix order {0} outside the supported range 1..=500")]
    OrderOutOfRange(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite entry in input")]
    NonFinite,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
