use std::f64::consts::PI;

use operator_space::{Operator, C64};

use crate::{FiniteGroupTable, GroupError, Multiplier, ProjectiveRep, Result};

/// Index bookkeeping for `Z_d × Z_d`: element `(q, p)` sits at `q·d + p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeylHeisenbergLabels {
    pub d: usize,
}

impl WeylHeisenbergLabels {
    pub fn index(&self, q: usize, p: usize) -> usize {
        (q % self.d) * self.d + p % self.d
    }

    pub fn coords(&self, g: usize) -> (usize, usize) {
        (g / self.d, g % self.d)
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn modular_inverse(a: usize, m: usize) -> Option<usize> {
    if m == 0 {
        return None;
    }
    let (mut r0, mut r1) = (m as i64, (a % m) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i64) as usize)
}

/// The discrete Weyl–Heisenberg representation of `Z_d × Z_d`, `d` odd.
///
/// `U(q, p) = ω^{2⁻¹qp} X^q Z^p` with `ω = e^{2πi/d}`, `X|j⟩ = |j+1⟩`,
/// `Z|j⟩ = ω^j|j⟩` and `2⁻¹` the inverse of 2 mod `d`. With this phase
/// `U(gh) = m(g,h) U(g)U(h)` for `m((q,p),(q′,p′)) = ω^{2⁻¹(qp′−pq′)}`.
/// The Haar weight is `1/d`, so `d_U = 1`.
pub fn weyl_heisenberg_finite(d: usize) -> Result<ProjectiveRep> {
    if d < 3 || d % 2 == 0 {
        return Err(GroupError::InvalidWeylDimension(d));
    }
    let half = modular_inverse(2, d).expect("2 is invertible mod odd d");
    let omega: Vec<C64> = (0..d).map(|k| C64::from_polar(1.0, 2.0 * PI * k as f64 / d as f64)).collect();
    let w = |k: usize| omega[k % d];
    let labels = WeylHeisenbergLabels { d };

    let group = FiniteGroupTable::zd_squared(d, 1.0 / d as f64)?;
    let n = d * d;

    let matrices = (0..n)
        .map(|g| {
            let (q, p) = labels.coords(g);
            let mut m = nalgebra::DMatrix::<C64>::zeros(d, d);
            for j in 0..d {
                m[((j + q) % d, j)] = w(p * j + half * q * p);
            }
            Operator::from_matrix(m)
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;

    let mut table = Vec::with_capacity(n * n);
    for g in 0..n {
        for h in 0..n {
            let (q, p) = labels.coords(g);
            let (qq, pp) = labels.coords(h);
            table.push(w(half * (q * pp + (d - p) * qq)));
        }
    }
    let multiplier = Multiplier::new(&group, table)?;
    ProjectiveRep::new(group, matrices, multiplier)
}
