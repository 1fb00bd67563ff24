use group_reps::TruncatedWeylSystem;
use nalgebra::DMatrix;
use operator_space::{canonical_decompose, Operator, C64};

use crate::quasi::check_dim;
use crate::{t_s_operator, Regime, Result, SParameter};

/// Levels with `|t_n| ≤ FRAME_LEVEL_CUTOFF·|t_0|` are dropped from the
/// reconstruction; the neglected part of `|Re s| Σ |t_n|²` is below `1e−14`.
const FRAME_LEVEL_CUTOFF: f64 = 1e-7;

/// A reconstructed operator and its relative HS error against the source.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub operator: Operator,
    /// `‖â − a‖_HS / ‖a‖_HS`, or the absolute error when `a = 0`.
    pub relative_error: f64,
}

fn finish(operator: Operator, source: &Operator) -> Reconstruction {
    let err = operator.hs_distance(source);
    let norm = source.hs_norm();
    let relative_error = if norm > 0.0 { err / norm } else { err };
    Reconstruction { operator, relative_error }
}

/// `A_s(z₁, z₂) = √|Re s| ⟨U(z₁) T_s U(z₂)†, a⟩_HS`, `z_i = (q_i, p_i)`.
pub fn bivariate_coefficient(
    a: &Operator,
    s: SParameter,
    sys: &TruncatedWeylSystem,
    z1: (f64, f64),
    z2: (f64, f64),
) -> Result<C64> {
    s.require(Regime::TraceClass, "Re s < 0")?;
    check_dim(sys, a)?;
    let t = sys.displacement(z1.0, z1.1) * t_s_operator(s, sys.n_fock()) * sys.displacement(z2.0, z2.1).adjoint();
    Ok(t.hs_inner(a) * s.value().re.abs().sqrt())
}

/// `∫∫ A_s(z₁, z₂) √|Re s| T_s(z₁, z₂) dμ(z₁) dμ(z₂)` over grid × grid.
///
/// The coefficient function has `|grid|²` entries and is never stored. With
/// `T_s = Σ_n t_n |n⟩⟨n|` and `F_{mn} = Σ_z (h²/2π) U(z)|m⟩⟨n|U(z)†` the sum is
/// `|Re s| Σ_{m,n} t_m t_n* F_{mn} a F_{mn}†`, and `F_{mn}` is only applied to
/// the singular vectors of `a`.
pub fn reconstruct(a: &Operator, s: SParameter, sys: &TruncatedWeylSystem) -> Result<Reconstruction> {
    s.require(Regime::TraceClass, "Re s < 0 (tight frame on phase space squared)")?;
    check_dim(sys, a)?;
    let n = sys.n_fock();
    let k = s.significant_levels(n, FRAME_LEVEL_CUTOFF);
    let t = s.eigenvalues(k);
    let dec = canonical_decompose(a);
    let vectors: Vec<_> = dec.left_vectors.iter().chain(&dec.right_vectors).cloned().collect();
    let w = C64::new(sys.grid().cell_weight(), 0.0);

    // images[v][:, m·k + l] = F_{ml} v
    let mut images = vec![DMatrix::<C64>::zeros(n, k * k); vectors.len()];
    sys.for_each_columns(k, |_, cols| {
        for (v, img) in vectors.iter().zip(images.iter_mut()) {
            let c = cols.adjoint() * v;
            for l in 0..k {
                let cl = c[l] * w;
                for m in 0..k {
                    img.column_mut(m * k + l).axpy(cl, &cols.column(m), C64::new(1.0, 0.0));
                }
            }
        }
    });

    let rank = dec.rank();
    let mut out = DMatrix::<C64>::zeros(n, n);
    for m in 0..k {
        for l in 0..k {
            let c = t[m] * t[l].conj() * s.value().re.abs();
            for i in 0..rank {
                let left = images[i].column(m * k + l);
                let right = images[rank + i].column(m * k + l);
                out += (left * right.adjoint()) * (c * dec.singular_values[i]);
            }
        }
    }
    Ok(finish(Operator::from_matrix(out)?, a))
}
