//! The s-parametrized operators `T_s = (2/(1−s)) Σ_n ((s+1)/(s−1))ⁿ |n⟩⟨n|`,
//! their displaced copies `T_s(z) = U(z) T_s U(z)†`, the quasi-distributions
//! `𝖠_s(z) = tr(T_s(z) a)` and reconstruction from the tight frame
//! `{√|Re s| T_s(z₁, z₂)}` on phase space × phase space.
//!
//! Everything lives on a truncated Fock space and on a square [`Grid`] of
//! phase-space points with cell weight `h²/2π`, so that the Weyl system has
//! `d_U = 1`. The coherent label is `α = (q + ip)/√2`.
//!
//! `T_s` is trace class for `Re s < 0`, bounded but not Hilbert–Schmidt for
//! `Re s = 0`, and unbounded for `Re s > 0`, `s ≠ 1`. In the last regime the
//! truncation is still built but is a formal object; probes with an
//! unbounded `T_s` are rejected.

mod error;
mod quasi;
mod reconstruct;
mod sparam;

pub use error::CahillError;
pub use group_reps::{Grid, TruncatedWeylSystem};
pub use quasi::{diagonal_trace_check, displaced_t_s, quasi_distribution, DisplacedOperator, QuasiDistribution};
pub use reconstruct::{bivariate_coefficient, reconstruct, Reconstruction};
pub use sparam::{default_grid, t_s_norm_report, t_s_operator, NormReport, Regime, SParameter, DEFAULT_N_FOCK};

/// Shorthand for `Result<T, CahillError>`.
pub type Result<T> = std::result::Result<T, CahillError>;
