use frame_engine::FrameError;
use group_reps::GroupError;
use operator_space::OperatorError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WignerError {
    #[error("functions live on different phase planes")]
    PlaneMismatch,

    #[error("wavefunction has {found} samples, grid axis has {expected}")]
    SamplingMismatch { expected: usize, found: usize },

    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("group element {index} out of range for order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error(transparent)]
    Group(#[from] GroupError),

    #[error(transparent)]
    Frame(#[from] FrameError),

    #[error(transparent)]
    Operator(#[from] OperatorError),
}
