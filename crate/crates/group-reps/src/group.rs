use std::sync::Arc;

use frame_engine::WeightedPointSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{GroupError, Result};

/// Associativity is checked on every triple up to this order and on a
/// random sample of triples above it.
const EXHAUSTIVE_ORDER: usize = 100;
const SAMPLED_TRIPLES: usize = 200_000;

/// A finite group given by its multiplication table, with Haar weights.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    order: usize,
    product: Vec<usize>,
    inverse: Vec<usize>,
    identity: usize,
    points: Arc<WeightedPointSet>,
}

impl PartialEq for FiniteGroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.product == other.product && self.points == other.points
    }
}

impl FiniteGroupTable {
    /// Validates a row-major `order × order` product table (`product[g·n + h] = gh`)
    /// and derives the identity and inverse tables.
    pub fn new(order: usize, product: Vec<usize>, labels: Vec<String>, haar_weight: Vec<f64>) -> Result<Self> {
        if order == 0 {
            return Err(GroupError::InvalidTable("order must be positive".into()));
        }
        if product.len() != order * order {
            return Err(GroupError::InvalidTable(format!(
                "product table has {} entries, expected {}",
                product.len(),
                order * order
            )));
        }
        if let Some(&bad) = product.iter().find(|&&x| x >= order) {
            return Err(GroupError::InvalidTable(format!("product entry {bad} out of range")));
        }
        let mul = |g: usize, h: usize| product[g * order + h];

        let identity = (0..order)
            .find(|&e| (0..order).all(|g| mul(e, g) == g && mul(g, e) == g))
            .ok_or_else(|| GroupError::InvalidTable("no two-sided identity".into()))?;

        let mut inverse = vec![0; order];
        for g in 0..order {
            inverse[g] = (0..order)
                .find(|&h| mul(g, h) == identity && mul(h, g) == identity)
                .ok_or_else(|| GroupError::InvalidTable(format!("element {g} has no inverse")))?;
        }

        let assoc = |a: usize, b: usize, c: usize| mul(mul(a, b), c) == mul(a, mul(b, c));
        if order <= EXHAUSTIVE_ORDER {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if !assoc(a, b, c) {
                            return Err(GroupError::InvalidTable(format!("not associative at ({a}, {b}, {c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(order as u64);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (rng.random_range(0..order), rng.random_range(0..order), rng.random_range(0..order));
                if !assoc(a, b, c) {
                    return Err(GroupError::InvalidTable(format!("not associative at ({a}, {b}, {c})")));
                }
            }
        }

        if labels.len() != order {
            return Err(GroupError::InvalidTable(format!("{} labels for order {order}", labels.len())));
        }
        let points = Arc::new(WeightedPointSet::new(labels, haar_weight)?);
        Ok(Self { order, product, inverse, identity, points })
    }

    /// The cyclic group `Z_n` with uniform weight `w`.
    pub fn cyclic(n: usize, w: f64) -> Result<Self> {
        let product = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Self::new(n, product, (0..n).map(|i| i.to_string()).collect(), vec![w; n])
    }

    /// `Z_d × Z_d` with element `(q, p)` at index `q·d + p` and uniform weight `w`.
    pub fn zd_squared(d: usize, w: f64) -> Result<Self> {
        let n = d * d;
        let mut product = Vec::with_capacity(n * n);
        for g in 0..n {
            for h in 0..n {
                let (q, p) = (g / d, g % d);
                let (qq, pp) = (h / d, h % d);
                product.push(((q + qq) % d) * d + (p + pp) % d);
            }
        }
        let labels = (0..n).map(|g| format!("({},{})", g / d, g % d)).collect();
        Self::new(n, product, labels, vec![w; n])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.product[g * self.order + h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn haar_weight(&self, g: usize) -> f64 {
        self.points.weight(g)
    }

    pub fn haar_weights(&self) -> &[f64] {
        self.points.weights()
    }

    /// The group as a measure space, for functions in `L²(G)`.
    pub fn points(&self) -> &Arc<WeightedPointSet> {
        &self.points
    }

    /// Same law with every Haar weight multiplied by `c > 0`.
    pub fn rescaled(&self, c: f64) -> Result<Self> {
        Ok(Self { points: Arc::new(self.points.rescaled(c)?), ..self.clone() })
    }

    /// Whether all Haar weights coincide (to relative `1e-14`).
    pub fn has_uniform_weight(&self) -> bool {
        let w = self.haar_weights();
        w.iter().all(|&x| (x - w[0]).abs() <= 1e-14 * w[0])
    }
}
