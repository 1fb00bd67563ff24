//! Tight frames of Hilbert–Schmidt operators generated by a square-integrable
//! representation.
//!
//! Given a unimodular irreducible projective representation `U` with
//! `d_U = 1` and an analyzing operator `T` with `‖T‖_HS = 1`, the family
//! `T(g₁, g₂) = U(g₁) T U(g₂)†` over `G × G` is a normalized tight frame in
//! `B₂(H)`. The frame transform [`OperatorFrame::dequantize`] is an isometry
//! into `L²(G × G)` with [`OperatorFrame::quantize`] as its pseudo-inverse.
//! Everything else (star products, left/right kernels, trace and expectation
//! formulas, intrinsic norms) is expressed through these two maps.
//!
//! Internally operators are flattened column-major, so the frame is a
//! `dim² × |G|²` synthesis matrix and kernels are plain matrix products.

mod error;
mod frame;
mod function;

pub use error::HsFrameError;
pub use frame::{fiducial_projector, OperatorFrame, StarPath};
pub use function::BiPhaseFunction;

/// Shorthand for `Result<T, HsFrameError>`.
pub type Result<T> = std::result::Result<T, HsFrameError>;
