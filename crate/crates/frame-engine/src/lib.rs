//! Frames over finite measure spaces.
//!
//! A frame is a family `{ψ_x}` indexed by the atoms of a weighted point set
//! `(X, μ)` whose metric operator `M = Σ_x μ(x) |ψ_x⟩⟨ψ_x|` is invertible.
//! Every integral over `X` is a weighted finite sum, so the frame identities
//! hold up to floating-point rounding.

mod error;
mod frame;
mod points;

pub use error::FrameError;
pub use frame::VectorFrame;
pub use points::{PhaseFunction, WeightedPointSet};

/// Shorthand for `Result<T, FrameError>`.
pub type Result<T> = std::result::Result<T, FrameError>;
