use thiserror::Error;

/// Errors raised by the core operations.
///
/// Solver outcomes such as non-convergence are not errors; they are reported
/// through [`crate::Status`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ViError {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid box bounds at index {index}: lo = {lo} > hi = {hi}")]
    InvalidBounds { index: usize, lo: f64, hi: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("operator undefined at this point: {0}")]
    Domain(String),

    #[error("degenerate Anderson denominator ({0:e})")]
    DegenerateCoefficient(f64),

    #[error("line search exceeded {0} backtracks")]
    LineSearchStalled(usize),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

pub type Result<T, E = ViError> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(ViError::DimensionMismatch { expected, actual })
    }
}
