use cahill_glauber::CahillError;
use frame_engine::FrameError;
use group_reps::GroupError;
use hs_frames::HsFrameError;
use operator_space::OperatorError;
use thiserror::Error;
use wigner_weyl::WignerError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Cahill(#[from] CahillError),

    #[error(transparent)]
    Frame(#[from] FrameError),

    #[error(transparent)]
    Group(#[from] GroupError),

    #[error(transparent)]
    HsFrame(#[from] HsFrameError),

    #[error(transparent)]
    Wigner(#[from] WignerError),

    #[error(transparent)]
    Operator(#[from] OperatorError),

    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    /// Every error is an invalid run; exit code 1 is reserved for failed checks.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
