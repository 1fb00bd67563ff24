use std::f64::consts::PI;
use std::sync::{Arc, OnceLock};

use frame_engine::WeightedPointSet;

use crate::{GroupError, Result};

/// Uniform phase-space lattice `{(−L + i h, −L + j h)}` covering `[−L, L]²`.
///
/// `2L/h` must be a positive even integer, so the origin is a lattice point
/// and each axis carries `2L/h + 1` samples. Point `(i, j)` has flat index
/// `i * side() + j` with `q = coord(i)` and `p = coord(j)`; every point carries
/// the weight `h²/(2π)`.
#[derive(Clone, Debug)]
pub struct Grid {
    half_extent: f64,
    spacing: f64,
    half_count: usize,
    points: OnceLock<Arc<WeightedPointSet>>,
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.half_count == other.half_count && self.spacing == other.spacing
    }
}

impl Grid {
    pub fn new(half_extent: f64, spacing: f64) -> Result<Self> {
        if !(half_extent > 0.0 && half_extent.is_finite()) {
            return Err(GroupError::InvalidGrid(format!("half extent must be positive, got {half_extent}")));
        }
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(GroupError::InvalidGrid(format!("spacing must be positive, got {spacing}")));
        }
        let ratio = 2.0 * half_extent / spacing;
        let steps = ratio.round();
        if (ratio - steps).abs() > 1e-9 * ratio.max(1.0) || steps < 2.0 || steps as u64 % 2 != 0 {
            return Err(GroupError::InvalidGrid(format!(
                "2L/h must be a positive even integer, got {ratio} for L = {half_extent}, h = {spacing}"
            )));
        }
        let half_count = steps as usize / 2;
        Ok(Self { half_extent: spacing * half_count as f64, spacing, half_count, points: OnceLock::new() })
    }

    pub fn half_extent(&self) -> f64 {
        self.half_extent
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// `L / h`; the origin sits at axis index `half_count()`.
    pub fn half_count(&self) -> usize {
        self.half_count
    }

    /// Samples per axis, `2L/h + 1`.
    pub fn side(&self) -> usize {
        2 * self.half_count + 1
    }

    /// Number of lattice points, `side()²`.
    pub fn len(&self) -> usize {
        self.side() * self.side()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Axis coordinate `−L + i h`.
    pub fn coord(&self, i: usize) -> f64 {
        (i as f64 - self.half_count as f64) * self.spacing
    }

    /// The axis samples `−L, −L + h, …, L`.
    pub fn axis(&self) -> Vec<f64> {
        (0..self.side()).map(|i| self.coord(i)).collect()
    }

    /// `(q, p)` of the point with flat index `k`.
    pub fn point(&self, k: usize) -> (f64, f64) {
        let n = self.side();
        (self.coord(k / n), self.coord(k % n))
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.side() + j
    }

    /// Per-point Haar weight `h²/(2π)`.
    pub fn cell_weight(&self) -> f64 {
        self.spacing * self.spacing / (2.0 * PI)
    }

    /// Area element `h²` for plain `dq dp` integrals.
    pub fn area_element(&self) -> f64 {
        self.spacing * self.spacing
    }

    /// The lattice as a weighted point set with weights `h²/(2π)`.
    pub fn points(&self) -> Arc<WeightedPointSet> {
        self.points
            .get_or_init(|| {
                let n = self.side();
                let labels = (0..self.len()).map(|k| format!("{},{}", k / n, k % n)).collect();
                let weights = vec![self.cell_weight(); self.len()];
                Arc::new(WeightedPointSet::new(labels, weights).expect("grid weights are positive"))
            })
            .clone()
    }
}
