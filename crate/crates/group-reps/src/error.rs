use frame_engine::FrameError;
use operator_space::OperatorError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroupError {
    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("invalid multiplier: {0}")]
    InvalidMultiplier(String),

    #[error("U({element}) is not unitary (defect {defect:.3e})")]
    NotUnitary { element: usize, defect: f64 },

    #[error("U(e) is not the identity (defect {defect:.3e})")]
    IdentityNotTrivial { defect: f64 },

    #[error("projective relation fails at ({g}, {h}) with residual {residual:.3e}")]
    ProjectiveRelation { g: usize, h: usize, residual: f64 },

    #[error("expected {expected} matrices, found {found}")]
    WrongMatrixCount { expected: usize, found: usize },

    #[error("Weyl–Heisenberg dimension must be odd and at least 3, got {0}")]
    InvalidWeylDimension(usize),

    #[error("Fock truncation must be at least 2, got {0}")]
    FockTooSmall(usize),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("fiducial vector is zero")]
    ZeroFiducial,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("representations act on different groups")]
    GroupMismatch,

    #[error(transparent)]
    Frame(#[from] FrameError),

    #[error(transparent)]
    Operator(#[from] OperatorError),
}
