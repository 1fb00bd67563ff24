//! Generalized Wigner transforms and phase-space distributions.
//!
//! For a unimodular square-integrable representation the Wigner transform
//! `S_U a = d_U⁻¹ tr(U(·)† a)` is an isometry from Hilbert–Schmidt operators
//! into `L²(G)`, and its adjoint is the Weyl map. The concrete distributions
//! of quantum mechanics live on a phase-space [`Grid`]:
//!
//! - [`wigner_distribution`] and [`wigner_rank_one`]: `Q_{φψ}`,
//! - [`fourier_wigner`]: `V_{φψ}`, with `F_sp V = Q`,
//! - [`symplectic_fourier`]: the involutive transform relating them.
//!
//! Quadratures are plain Riemann sums on the lattice. The half-shifts in
//! `Q` and `V` are absorbed by a change of variables so every sample of the
//! wavefunction lies on the lattice; no interpolation is involved.

mod distribution;
mod error;
mod fourier;
mod function;
mod transform;
mod wavefunction;

pub use distribution::{fourier_wigner, wigner_distribution, wigner_rank_one};
pub use error::WignerError;
pub use fourier::{symplectic_fourier, symplectic_fourier_finite, symplectic_fourier_grid};
pub use function::{PhasePlane, WignerFunction, WignerKind};
pub use group_reps::Grid;
pub use transform::{generalized_wigner, generalized_wigner_grid, tm_action, uvu_action, weyl_map, wigner_transform_rank};
pub use wavefunction::SampledWavefunction;

/// Shorthand for `Result<T, WignerError>`.
pub type Result<T> = std::result::Result<T, WignerError>;
