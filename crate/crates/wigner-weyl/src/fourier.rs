use std::f64::consts::PI;

use operator_space::C64;

use crate::{Grid, PhasePlane, Result, WignerError, WignerFunction};

/// Symplectic Fourier transform on either kind of phase plane.
pub fn symplectic_fourier(f: &WignerFunction) -> Result<WignerFunction> {
    let values = match f.plane() {
        PhasePlane::Grid(g) => symplectic_fourier_grid(g, f.values())?,
        PhasePlane::Finite(d) => symplectic_fourier_finite(*d, f.values())?,
    };
    WignerFunction::new(f.plane().clone(), values, f.kind())
}

/// `(F f)(q, p) = d⁻¹ Σ_{q′,p′} f(q′, p′) ω^{qp′ − pq′}` on `Z_d × Z_d`.
///
/// Unitary for the Haar weight `1/d`, self-adjoint and involutive.
pub fn symplectic_fourier_finite(d: usize, values: &[C64]) -> Result<Vec<C64>> {
    if values.len() != d * d {
        return Err(WignerError::LengthMismatch { expected: d * d, found: values.len() });
    }
    let omega: Vec<C64> = (0..d).map(|k| C64::from_polar(1.0, 2.0 * PI * k as f64 / d as f64)).collect();
    // Separable: first over p′ with ω^{qp′}, then over q′ with ω^{−pq′}.
    let mut partial = vec![C64::new(0.0, 0.0); d * d];
    for qp in 0..d {
        for q in 0..d {
            partial[qp * d + q] = (0..d).map(|pp| values[qp * d + pp] * omega[(q * pp) % d]).sum();
        }
    }
    let scale = 1.0 / d as f64;
    let mut out = vec![C64::new(0.0, 0.0); d * d];
    for q in 0..d {
        for p in 0..d {
            out[q * d + p] =
                (0..d).map(|qp| partial[qp * d + q] * omega[(d - (p * qp) % d) % d]).sum::<C64>() * scale;
        }
    }
    Ok(out)
}

/// `(F f)(q, p) = (2π)⁻¹ ∫∫ f(q′, p′) e^{i(qp′ − pq′)} dq′ dp′` by the
/// lattice Riemann sum, evaluated on the same lattice.
pub fn symplectic_fourier_grid(grid: &Grid, values: &[C64]) -> Result<Vec<C64>> {
    let n = grid.side();
    if values.len() != n * n {
        return Err(WignerError::LengthMismatch { expected: n * n, found: values.len() });
    }
    let axis = grid.axis();
    // e^{i x_a x_b} for all axis pairs.
    let phase: Vec<C64> = (0..n * n).map(|k| C64::from_polar(1.0, axis[k / n] * axis[k % n])).collect();

    // partial[q′][q] = Σ_{p′} f(q′, p′) e^{iqp′}
    let mut partial = vec![C64::new(0.0, 0.0); n * n];
    for qp in 0..n {
        let row = &values[qp * n..(qp + 1) * n];
        for q in 0..n {
            let ph = &phase[q * n..(q + 1) * n];
            partial[qp * n + q] = row.iter().zip(ph).map(|(v, e)| v * e).sum();
        }
    }
    let scale = grid.area_element() / (2.0 * PI);
    let mut out = vec![C64::new(0.0, 0.0); n * n];
    for q in 0..n {
        for p in 0..n {
            let ph = &phase[p * n..(p + 1) * n];
            out[q * n + p] = (0..n).map(|qp| partial[qp * n + q] * ph[qp].conj()).sum::<C64>() * scale;
        }
    }
    Ok(out)
}
