use frame_engine::FrameError;
use group_reps::GroupError;
use operator_space::{OperatorError, C64};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HsFrameError {
    #[error("invalid operator frame: {0}")]
    InvalidFrame(String),

    #[error("fiducial operator must have unit trace, found {trace}")]
    InvalidNormalization { trace: C64 },

    #[error("analyzing operator has vanishing trace ({trace:.3e})")]
    DegenerateAnalyzer { trace: f64 },

    #[error("operator is not self-adjoint (defect {defect:.3e})")]
    NotSelfAdjoint { defect: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("function does not live on this frame's G × G")]
    DomainMismatch,

    #[error("frames are built over different representations")]
    FrameMismatch,

    #[error(transparent)]
    Group(#[from] GroupError),

    #[error(transparent)]
    Frame(#[from] FrameError),

    #[error(transparent)]
    Operator(#[from] OperatorError),
}
