use std::sync::Arc;

use frame_engine::{PhaseFunction, WeightedPointSet};
use operator_space::C64;

use crate::{HsFrameError, Result};

/// A function on `G × G`, point `(g₁, g₂)` at index `g₁·|G| + g₂`, with the
/// product Haar measure.
#[derive(Clone, Debug)]
pub struct BiPhaseFunction {
    order: usize,
    inner: PhaseFunction,
}

impl BiPhaseFunction {
    pub fn new(order: usize, points: Arc<WeightedPointSet>, values: Vec<C64>) -> Result<Self> {
        if points.len() != order * order {
            return Err(HsFrameError::DimensionMismatch { expected: order * order, found: points.len() });
        }
        Ok(Self { order, inner: PhaseFunction::new(points, values)? })
    }

    pub fn zeros(order: usize, points: Arc<WeightedPointSet>) -> Result<Self> {
        Self::new(order, points, vec![C64::new(0.0, 0.0); order * order])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn points(&self) -> &Arc<WeightedPointSet> {
        self.inner.points()
    }

    pub fn values(&self) -> &[C64] {
        self.inner.values()
    }

    pub fn as_phase_function(&self) -> &PhaseFunction {
        &self.inner
    }

    pub fn value(&self, y: usize) -> C64 {
        self.inner.value(y)
    }

    /// `Φ(g₁, g₂)`.
    pub fn at(&self, g1: usize, g2: usize) -> C64 {
        self.inner.value(g1 * self.order + g2)
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    fn with_values(&self, values: Vec<C64>) -> Self {
        Self { order: self.order, inner: PhaseFunction::new(self.points().clone(), values).expect("same length") }
    }

    /// `Φ^◇(g₁, g₂) = Φ(g₂, g₁)*`.
    pub fn involution(&self) -> Self {
        let n = self.order;
        self.with_values((0..n * n).map(|y| self.at(y % n, y / n).conj()).collect())
    }

    /// `⟨Φ, Ψ⟩ = Σ μ⊗μ(y) Φ(y)* Ψ(y)`.
    pub fn inner(&self, other: &BiPhaseFunction) -> Result<C64> {
        Ok(self.inner.inner(&other.inner)?)
    }

    pub fn norm(&self) -> f64 {
        self.inner.norm()
    }

    /// `‖Φ − Ψ‖` in `L²(G × G)`.
    pub fn distance(&self, other: &BiPhaseFunction) -> Result<f64> {
        Ok(self.inner.distance(&other.inner)?)
    }

    /// `max |Φ − Ψ|`.
    pub fn sup_distance(&self, other: &BiPhaseFunction) -> Result<f64> {
        Ok(self.inner.sup_distance(&other.inner)?)
    }

    pub fn scale(&self, c: C64) -> Self {
        self.with_values(self.values().iter().map(|v| v * c).collect())
    }

    pub fn add(&self, other: &BiPhaseFunction) -> Result<Self> {
        Ok(Self { order: self.order, inner: self.inner.add(&other.inner)? })
    }

    pub fn sub(&self, other: &BiPhaseFunction) -> Result<Self> {
        Ok(Self { order: self.order, inner: self.inner.sub(&other.inner)? })
    }
}
