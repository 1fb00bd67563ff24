use std::collections::HashSet;
use std::sync::Arc;

use operator_space::C64;

use crate::{FrameError, Result};

/// A finite measure space: labeled atoms with strictly positive weights.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedPointSet {
    labels: Vec<String>,
    weights: Vec<f64>,
}

impl WeightedPointSet {
    pub fn new(labels: Vec<String>, weights: Vec<f64>) -> Result<Self> {
        if labels.len() != weights.len() {
            return Err(FrameError::LengthMismatch { expected: labels.len(), found: weights.len() });
        }
        if labels.is_empty() {
            return Err(FrameError::EmptyPointSet);
        }
        if let Some((index, &weight)) = weights.iter().enumerate().find(|(_, &w)| !(w > 0.0 && w.is_finite())) {
            return Err(FrameError::NonPositiveWeight { index, weight });
        }
        let mut seen = HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(FrameError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self { labels, weights })
    }

    /// `n` atoms labeled `0..n`, all with weight `w`.
    pub fn uniform(n: usize, w: f64) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()).collect(), vec![w; n])
    }

    /// Atoms labeled `0..n` with the given weights.
    pub fn indexed(weights: Vec<f64>) -> Result<Self> {
        Self::new((0..weights.len()).map(|i| i.to_string()).collect(), weights)
    }

    /// Product measure space; atom `(i, j)` sits at index `i * other.len() + j`.
    pub fn product(&self, other: &WeightedPointSet) -> Self {
        let mut labels = Vec::with_capacity(self.len() * other.len());
        let mut weights = Vec::with_capacity(self.len() * other.len());
        for (la, wa) in self.labels.iter().zip(&self.weights) {
            for (lb, wb) in other.labels.iter().zip(&other.weights) {
                labels.push(format!("({la},{lb})"));
                weights.push(wa * wb);
            }
        }
        Self { labels, weights }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Total mass `Σ μ(x)`.
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Same weights scaled by `c > 0`.
    pub fn rescaled(&self, c: f64) -> Result<Self> {
        Self::new(self.labels.clone(), self.weights.iter().map(|w| w * c).collect())
    }
}

/// A complex function on a weighted point set, an element of `L²(X, μ)`.
#[derive(Clone, Debug)]
pub struct PhaseFunction {
    points: Arc<WeightedPointSet>,
    values: Vec<C64>,
}

impl PhaseFunction {
    pub fn new(points: Arc<WeightedPointSet>, values: Vec<C64>) -> Result<Self> {
        if values.len() != points.len() {
            return Err(FrameError::LengthMismatch { expected: points.len(), found: values.len() });
        }
        Ok(Self { points, values })
    }

    pub fn zeros(points: Arc<WeightedPointSet>) -> Self {
        let n = points.len();
        Self { points, values: vec![C64::new(0.0, 0.0); n] }
    }

    pub fn from_fn(points: Arc<WeightedPointSet>, f: impl FnMut(usize) -> C64) -> Self {
        let values = (0..points.len()).map(f).collect();
        Self { points, values }
    }

    pub fn points(&self) -> &Arc<WeightedPointSet> {
        &self.points
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [C64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<C64> {
        self.values
    }

    pub fn value(&self, i: usize) -> C64 {
        self.values[i]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Whether both functions live on the same point set.
    pub fn same_domain(&self, other: &PhaseFunction) -> bool {
        Arc::ptr_eq(&self.points, &other.points) || *self.points == *other.points
    }

    fn check_domain(&self, other: &PhaseFunction) -> Result<()> {
        if self.same_domain(other) {
            Ok(())
        } else {
            Err(FrameError::PointSetMismatch)
        }
    }

    /// `⟨self, other⟩ = Σ μ(x) conj(self(x)) other(x)`.
    pub fn inner(&self, other: &PhaseFunction) -> Result<C64> {
        self.check_domain(other)?;
        Ok(self.inner_unchecked(other))
    }

    pub(crate) fn inner_unchecked(&self, other: &PhaseFunction) -> C64 {
        self.values
            .iter()
            .zip(&other.values)
            .zip(self.points.weights())
            .map(|((a, b), &w)| a.conj() * b * w)
            .sum()
    }

    pub fn norm_squared(&self) -> f64 {
        self.values.iter().zip(self.points.weights()).map(|(a, &w)| a.norm_sqr() * w).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// `‖self − other‖` in `L²(X, μ)`.
    pub fn distance(&self, other: &PhaseFunction) -> Result<f64> {
        self.check_domain(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .zip(self.points.weights())
            .map(|((a, b), &w)| (a - b).norm_sqr() * w)
            .sum::<f64>()
            .sqrt())
    }

    /// `max_x |self(x) − other(x)|`.
    pub fn sup_distance(&self, other: &PhaseFunction) -> Result<f64> {
        self.check_domain(other)?;
        Ok(self.values.iter().zip(&other.values).fold(0.0, |m, (a, b)| m.max((a - b).norm())))
    }

    /// `max_x |self(x)|`.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, a| m.max(a.norm()))
    }

    pub fn scale(&self, c: C64) -> Self {
        Self { points: self.points.clone(), values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn add(&self, other: &PhaseFunction) -> Result<Self> {
        self.check_domain(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &PhaseFunction) -> Result<Self> {
        self.check_domain(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    /// Pointwise complex conjugate.
    pub fn conj(&self) -> Self {
        Self { points: self.points.clone(), values: self.values.iter().map(|v| v.conj()).collect() }
    }

    /// `Σ μ(x) self(x)`.
    pub fn integral(&self) -> C64 {
        self.values.iter().zip(self.points.weights()).map(|(v, &w)| v * w).sum()
    }

    fn zip_with(&self, other: &PhaseFunction, f: impl Fn(C64, C64) -> C64) -> Self {
        Self {
            points: self.points.clone(),
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}
