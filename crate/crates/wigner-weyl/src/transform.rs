use frame_engine::{FrameError, PhaseFunction};
use group_reps::{ProjectiveRep, TruncatedWeylSystem};
use nalgebra::DMatrix;
use operator_space::{Operator, C64};

use crate::{PhasePlane, Result, WignerError, WignerFunction, WignerKind};

fn check_operator(rep: &ProjectiveRep, a: &Operator) -> Result<()> {
    if a.dim() != rep.dim() {
        return Err(WignerError::DimensionMismatch { expected: rep.dim(), found: a.dim() });
    }
    Ok(())
}

fn check_element(rep: &ProjectiveRep, g: usize) -> Result<()> {
    if g >= rep.order() {
        return Err(WignerError::ElementOutOfRange { index: g, order: rep.order() });
    }
    Ok(())
}

fn check_function(rep: &ProjectiveRep, f: &PhaseFunction) -> Result<()> {
    if **f.points() == **rep.group().points() {
        Ok(())
    } else {
        Err(FrameError::PointSetMismatch.into())
    }
}

/// `(S_U a)(g) = d_U⁻¹ tr(U(g)† a)`.
///
/// Only unimodular representations with `D_U = d_U·I` are handled, so the
/// Duflo–Moore inverse is a scalar.
pub fn generalized_wigner(rep: &ProjectiveRep, a: &Operator) -> Result<PhaseFunction> {
    check_operator(rep, a)?;
    let inv = 1.0 / rep.duflo_constant();
    Ok(PhaseFunction::from_fn(rep.group().points().clone(), |g| rep.matrix(g).hs_inner(a) * inv))
}

/// Weyl map `S_U* f = d_U⁻¹ Σ_g μ(g) f(g) U(g)`.
pub fn weyl_map(rep: &ProjectiveRep, f: &PhaseFunction) -> Result<Operator> {
    check_function(rep, f)?;
    let n = rep.dim();
    let mut out = DMatrix::<C64>::zeros(n, n);
    let inv = 1.0 / rep.duflo_constant();
    for (g, (&mu, &v)) in rep.group().haar_weights().iter().zip(f.values()).enumerate() {
        out += rep.matrix(g).matrix() * (v * mu * inv);
    }
    Ok(Operator::from_matrix(out)?)
}

/// `(U∨U)(g) a = U(g) a U(g)†`.
pub fn uvu_action(rep: &ProjectiveRep, g: usize, a: &Operator) -> Result<Operator> {
    check_operator(rep, a)?;
    check_element(rep, g)?;
    let u = rep.matrix(g);
    Ok(u * a * u.adjoint())
}

/// Two-sided regular representation
/// `(T_m(g) f)(g′) = m(g, g⁻¹g′)* m(g⁻¹g′, g) f(g⁻¹g′g)` (unimodular case).
pub fn tm_action(rep: &ProjectiveRep, g: usize, f: &PhaseFunction) -> Result<PhaseFunction> {
    check_function(rep, f)?;
    check_element(rep, g)?;
    let grp = rep.group();
    let m = rep.multiplier();
    let gi = grp.inv(g);
    Ok(PhaseFunction::from_fn(f.points().clone(), |gp| {
        let x = grp.mul(gi, gp);
        m.value(g, x).conj() * m.value(x, g) * f.value(grp.mul(x, g))
    }))
}

/// Rank of `S_U` as a map from `n × n` matrices into `L²(G)`; `n²` when the
/// transform is onto its natural range.
pub fn wigner_transform_rank(rep: &ProjectiveRep) -> usize {
    let n = rep.dim();
    let s = DMatrix::<C64>::from_fn(rep.order(), n * n, |g, k| rep.matrix(g).get(k % n, k / n).conj());
    let sv = s.singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&x| x > 1e-10 * max).count()
}

/// `z ↦ tr(U(z)† a)` on the grid of a truncated Weyl system (`d_U = 1`).
///
/// This is `S_U a`, which equals `2π V` for the Fourier–Wigner function `V`
/// of `a`.
pub fn generalized_wigner_grid(sys: &TruncatedWeylSystem, a: &Operator) -> Result<WignerFunction> {
    if a.dim() != sys.n_fock() {
        return Err(WignerError::DimensionMismatch { expected: sys.n_fock(), found: a.dim() });
    }
    let n = sys.n_fock();
    let mut values = vec![C64::new(0.0, 0.0); sys.len()];
    sys.for_each_columns(n, |k, u| {
        values[k] = u.iter().zip(a.matrix().iter()).map(|(x, y)| x.conj() * y).sum();
    });
    WignerFunction::new(PhasePlane::Grid(sys.grid().clone()), values, WignerKind::FourierWigner)
}
