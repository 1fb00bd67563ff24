//! Centralized numerical tolerances.
//!
//! Identities that are exact in exact arithmetic are checked against
//! [`EXACT`]; quantities obtained from iterative eigen-solvers against
//! [`ITERATIVE`]. Every predicate that uses a tolerance also has a variant
//! taking an explicit value.

/// Absolute tolerance for identities that hold exactly up to rounding.
pub const EXACT: f64 = 1e-10;

/// Tolerance for quantities produced by iterative eigen/SVD solvers.
pub const ITERATIVE: f64 = 1e-6;

/// Relative threshold below which a singular value is treated as zero.
pub const RANK: f64 = 1e-14;

/// Ratio `α / β` below which a family is not accepted as a frame.
pub const FRAME_CONDITION: f64 = 1e-12;
