//! Random test objects drawn from complex Gaussian ensembles.
//!
//! All samplers take the generator explicitly so callers control seeding.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::{Operator, Vector, C64};

/// One complex Gaussian with independent standard normal parts.
pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vector {
    Vector::from_fn(n, |_, _| gaussian(rng))
}

/// Uniformly distributed unit vector.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vector {
    loop {
        let v = gaussian_vector(rng, n);
        let norm = v.norm();
        if norm > 1e-8 {
            return v.unscale(norm);
        }
    }
}

/// Ginibre matrix (i.i.d. complex Gaussian entries).
pub fn gaussian_operator<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Operator {
    Operator::from_fn(n, |_, _| gaussian(rng))
}

/// Hermitian matrix `(g + g†)/2` with `g` Ginibre.
pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Operator {
    let g = gaussian_operator(rng, n);
    (&g + &g.adjoint()) * 0.5
}

/// Positive semidefinite matrix `g† g`.
pub fn positive<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Operator {
    let g = gaussian_operator(rng, n);
    &g.adjoint() * &g
}

/// Density matrix: positive with unit trace.
pub fn density_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Operator {
    let p = positive(rng, n);
    let t = p.trace().re;
    p * (1.0 / t)
}

/// Operator normalized to unit Hilbert–Schmidt norm.
pub fn hs_normalized<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Operator {
    let g = gaussian_operator(rng, n);
    let norm = g.hs_norm();
    g * (1.0 / norm)
}
