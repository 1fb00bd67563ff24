//! Finite groups, projective representations and Weyl systems.
//!
//! The flagship instances are the Weyl–Heisenberg representation of
//! `Z_d × Z_d` for odd `d` ([`weyl_heisenberg_finite`]) and the Weyl system
//! `U(q, p) = exp(i(p q̂ − q p̂))` on a truncated Fock space sampled on a
//! phase-space [`Grid`] ([`TruncatedWeylSystem`]).
//!
//! Group integrals are weighted sums with the Haar weights carried by the
//! [`FiniteGroupTable`]. For a unimodular irreducible representation the
//! Duflo–Moore operator is the scalar `d_U · I`.

mod error;
mod grid;
mod group;
mod multiplier;
mod rep;
mod truncated;
mod weyl_heisenberg;

pub use error::GroupError;
pub use grid::Grid;
pub use group::FiniteGroupTable;
pub use multiplier::Multiplier;
pub use rep::{OrthogonalityReport, ProjectiveRep, WaveletTransform};
pub use truncated::{fock_annihilation, position_operator, momentum_operator, TruncatedWeylSystem};
pub use weyl_heisenberg::{modular_inverse, weyl_heisenberg_finite, WeylHeisenbergLabels};

/// Shorthand for `Result<T, GroupError>`.
pub type Result<T> = std::result::Result<T, GroupError>;
