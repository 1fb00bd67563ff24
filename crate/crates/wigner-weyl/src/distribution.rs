use std::f64::consts::PI;

use operator_space::C64;

use crate::{Grid, PhasePlane, Result, SampledWavefunction, WignerError, WignerFunction, WignerKind};

fn check(grid: &Grid, f: &SampledWavefunction) -> Result<()> {
    if f.grid() != grid {
        return Err(WignerError::SamplingMismatch { expected: grid.side(), found: f.len() });
    }
    Ok(())
}

/// `Q_ψ = Q_{ψψ}`, real up to roundoff.
pub fn wigner_distribution(psi: &SampledWavefunction, grid: &Grid) -> Result<WignerFunction> {
    wigner_rank_one(psi, psi, grid)
}

/// `Q_{φψ}(q, p) = (2π)⁻¹ ∫ e^{−ipx} ψ(q − x/2)* φ(q + x/2) dx`.
///
/// With `x = 2y` this is `π⁻¹ ∫ e^{−2ipy} ψ(q − y)* φ(q + y) dy`, and the
/// Riemann sum over `y ∈ hZ` only touches lattice samples.
pub fn wigner_rank_one(phi: &SampledWavefunction, psi: &SampledWavefunction, grid: &Grid) -> Result<WignerFunction> {
    check(grid, phi)?;
    check(grid, psi)?;
    let n = grid.side();
    let half = grid.half_count() as i64;
    let h = grid.spacing();
    let axis = grid.axis();
    let scale = h / PI;

    let mut values = vec![C64::new(0.0, 0.0); n * n];
    for i in 0..n {
        let q = i as i64 - half;
        let reach = half - q.abs();
        let terms: Vec<(f64, C64)> = (-reach..=reach)
            .map(|k| (k as f64 * h, psi.at_offset(q - k).conj() * phi.at_offset(q + k)))
            .filter(|(_, c)| *c != C64::new(0.0, 0.0))
            .collect();
        for (j, &p) in axis.iter().enumerate() {
            let s: C64 = terms.iter().map(|&(y, c)| c * C64::from_polar(1.0, -2.0 * p * y)).sum();
            values[i * n + j] = s * scale;
        }
    }
    WignerFunction::new(PhasePlane::Grid(grid.clone()), values, WignerKind::Wigner)
}

/// `V_{φψ}(q, p) = (2π)⁻¹ ∫ e^{−ipx} ψ(x − q/2)* φ(x + q/2) dx
/// = (2π)⁻¹ tr(U(q, p)† |φ⟩⟨ψ|)`.
///
/// Substituting `x = u + q/2` puts both samples on the lattice:
/// `V = (2π)⁻¹ ∫ e^{−ip(u + q/2)} ψ(u)* φ(u + q) du`.
pub fn fourier_wigner(phi: &SampledWavefunction, psi: &SampledWavefunction, grid: &Grid) -> Result<WignerFunction> {
    check(grid, phi)?;
    check(grid, psi)?;
    let n = grid.side();
    let half = grid.half_count() as i64;
    let h = grid.spacing();
    let axis = grid.axis();
    let scale = h / (2.0 * PI);

    let mut values = vec![C64::new(0.0, 0.0); n * n];
    for i in 0..n {
        let shift = i as i64 - half;
        let q = axis[i];
        let terms: Vec<(f64, C64)> = (-half..=half)
            .map(|a| (a as f64 * h + q / 2.0, psi.at_offset(a).conj() * phi.at_offset(a + shift)))
            .filter(|(_, c)| *c != C64::new(0.0, 0.0))
            .collect();
        for (j, &p) in axis.iter().enumerate() {
            let s: C64 = terms.iter().map(|&(x, c)| c * C64::from_polar(1.0, -p * x)).sum();
            values[i * n + j] = s * scale;
        }
    }
    WignerFunction::new(PhasePlane::Grid(grid.clone()), values, WignerKind::FourierWigner)
}
