//! Dense complex operators on finite-dimensional Hilbert spaces.
//!
//! [`Operator`] is the carrier used by every other crate in the workspace:
//! states, observables, unitary representation matrices and Hilbert–Schmidt
//! frame elements are all square complex matrices of modest size.
//!
//! Inner products are conjugate-linear in the first argument, so
//! `hs_inner(a, b) = tr(a† b)` and `inner(x, y) = Σ conj(x_i) y_i`.

mod decompose;
mod error;
mod operator;
pub mod sample;
pub mod tol;

pub use decompose::{
    canonical_decompose, hermitian_eigen, matrix_exp, positive_sqrt, positive_sqrt_with_tol,
    CanonicalDecomposition,
};
pub use error::OperatorError;
pub use operator::{
    adjoint, hs_inner, hs_norm, inner, op_norm, outer, trace, trace_norm, Operator, Vector, C64,
};

/// Shorthand for `Result<T, OperatorError>`.
pub type Result<T> = std::result::Result<T, OperatorError>;

/// Complex zero.
pub const ZERO: C64 = C64::new(0.0, 0.0);
/// Complex one.
pub const ONE: C64 = C64::new(1.0, 0.0);
/// Imaginary unit.
pub const I: C64 = C64::new(0.0, 1.0);
