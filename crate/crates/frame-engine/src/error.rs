use operator_space::OperatorError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("point set is empty")]
    EmptyPointSet,

    #[error("weight {weight} at index {index} is not strictly positive")]
    NonPositiveWeight { index: usize, weight: f64 },

    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),

    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("functions are defined on different point sets")]
    PointSetMismatch,

    #[error("point index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("not a frame: lower bound {alpha:.3e} is below tolerance relative to upper bound {beta:.3e}")]
    NotAFrame { alpha: f64, beta: f64 },

    #[error(transparent)]
    Operator(#[from] OperatorError),
}
