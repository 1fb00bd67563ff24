use group_reps::GroupError;
use operator_space::{OperatorError, C64};
use thiserror::Error;

use crate::Regime;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CahillError {
    #[error("s = 1 does not define an operator")]
    SEqualsOne,

    #[error("s = {s} is in the {regime} regime; this operation needs {required}")]
    RegimeMismatch { s: C64, regime: Regime, required: &'static str },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error(transparent)]
    Group(#[from] GroupError),

    #[error(transparent)]
    Operator(#[from] OperatorError),
}
