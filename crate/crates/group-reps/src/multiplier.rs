use operator_space::C64;

use crate::{FiniteGroupTable, GroupError, Result};

/// Modulus and cocycle defects above this are rejected.
const MULTIPLIER_TOL: f64 = 1e-12;

/// Cocycle check runs on all triples up to this order.
const EXHAUSTIVE_ORDER: usize = 100;

/// A normalized 2-cocycle `m: G × G → U(1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Multiplier {
    order: usize,
    table: Vec<C64>,
}

impl Multiplier {
    /// Validates `table[g·n + h] = m(g, h)` against `group`.
    ///
    /// Checks unit modulus, `m(g, e) = m(e, g) = 1` and the cocycle identity
    /// `m(g₁, g₂g₃) m(g₂, g₃) = m(g₁g₂, g₃) m(g₁, g₂)`; on every triple up to
    /// order 100, with `g₁` limited to the first 100 elements above that.
    pub fn new(group: &FiniteGroupTable, table: Vec<C64>) -> Result<Self> {
        let n = group.order();
        if table.len() != n * n {
            return Err(GroupError::InvalidMultiplier(format!("{} entries, expected {}", table.len(), n * n)));
        }
        let m = Self { order: n, table };
        for g in 0..n {
            for h in 0..n {
                let v = m.value(g, h);
                if (v.norm() - 1.0).abs() > MULTIPLIER_TOL {
                    return Err(GroupError::InvalidMultiplier(format!("|m({g}, {h})| = {}", v.norm())));
                }
            }
        }
        let e = group.identity();
        for g in 0..n {
            if (m.value(g, e) - 1.0).norm() > MULTIPLIER_TOL || (m.value(e, g) - 1.0).norm() > MULTIPLIER_TOL {
                return Err(GroupError::InvalidMultiplier(format!("not normalized at {g}")));
            }
        }
        let residual = m.cocycle_residual_bounded(group, if n <= EXHAUSTIVE_ORDER { n } else { EXHAUSTIVE_ORDER });
        if residual > MULTIPLIER_TOL {
            return Err(GroupError::InvalidMultiplier(format!("cocycle identity fails by {residual:.3e}")));
        }
        Ok(m)
    }

    /// The trivial multiplier `m ≡ 1`.
    pub fn trivial(group: &FiniteGroupTable) -> Self {
        let n = group.order();
        Self { order: n, table: vec![C64::new(1.0, 0.0); n * n] }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self, g: usize, h: usize) -> C64 {
        self.table[g * self.order + h]
    }

    pub fn table(&self) -> &[C64] {
        &self.table
    }

    /// `max |m(g₁, g₂g₃) m(g₂, g₃) − m(g₁g₂, g₃) m(g₁, g₂)|` over all triples.
    pub fn cocycle_residual(&self, group: &FiniteGroupTable) -> f64 {
        self.cocycle_residual_bounded(group, group.order())
    }

    fn cocycle_residual_bounded(&self, group: &FiniteGroupTable, limit: usize) -> f64 {
        let n = group.order();
        let mut worst = 0.0f64;
        for a in 0..limit {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.value(a, group.mul(b, c)) * self.value(b, c);
                    let rhs = self.value(group.mul(a, b), c) * self.value(a, b);
                    worst = worst.max((lhs - rhs).norm());
                }
            }
        }
        worst
    }
}
