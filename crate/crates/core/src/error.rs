use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("grid size {0} rejected: need an even number of points, at least 8")]
    InvalidGrid(usize),

    #[error("grid mismatch: {left} vs {right} points")]
    GridMismatch { left: usize, right: usize },

    #[error("length mismatch: expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("non-finite entry at position {0}")]
    NonFinite(usize),

    #[error("phase-space point ({m}, {k}) outside the centered range of an {n}-point grid")]
    PointOutOfRange { m: i64, k: i64, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown kind `{0}`")]
    UnknownKind(String),

    #[error("window is zero")]
    ZeroWindow,

    #[error("window must have unit norm (got norm {0})")]
    UnnormalizedWindow(f64),

    #[error("window has numerical zeros: min modulus {min:e} against max {max:e}")]
    WindowHasZeros { min: f64, max: f64 },

    #[error("{n}-point grid exceeds the size guard of {limit} points for four-dimensional tables")]
    SizeGuard { n: usize, limit: usize },

    #[error("SVD did not converge after {sweeps} sweeps (off-diagonal ratio {residual:e})")]
    SvdNoConvergence { sweeps: usize, residual: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}
