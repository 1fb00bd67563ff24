use std::f64::consts::PI;

use operator_space::{Vector, C64};

use crate::{Grid, Result, WignerError};

/// A position wavefunction sampled on the axis of a [`Grid`].
///
/// Samples outside `[−L, L]` are taken to be zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledWavefunction {
    grid: Grid,
    values: Vec<C64>,
}

impl SampledWavefunction {
    pub fn new(grid: Grid, values: Vec<C64>) -> Result<Self> {
        if values.len() != grid.side() {
            return Err(WignerError::SamplingMismatch { expected: grid.side(), found: values.len() });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> C64) -> Self {
        let values = grid.axis().into_iter().map(f).collect();
        Self { grid, values }
    }

    /// `ψ(x) = Σ_n c_n h_n(x)` with the Hermite functions
    /// `h_n(x) = (2ⁿ n! √π)^{−1/2} H_n(x) e^{−x²/2}`, the position
    /// representation of the Fock basis for `q̂ = (a + a†)/√2`.
    pub fn from_fock(grid: Grid, coeffs: &Vector) -> Self {
        let values = grid
            .axis()
            .into_iter()
            .map(|x| hermite_functions(x, coeffs.len()).iter().zip(coeffs.iter()).map(|(h, c)| c * *h).sum())
            .collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sample at signed offset `k` from the origin; zero off the axis.
    pub(crate) fn at_offset(&self, k: i64) -> C64 {
        let i = k + self.grid.half_count() as i64;
        if i < 0 || i >= self.values.len() as i64 {
            C64::new(0.0, 0.0)
        } else {
            self.values[i as usize]
        }
    }

    /// `‖ψ‖² ≈ h Σ |ψ(x)|²`.
    pub fn norm_squared(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.spacing()
    }

    /// `⟨self, other⟩ ≈ h Σ self(x)* other(x)`.
    pub fn inner(&self, other: &SampledWavefunction) -> Result<C64> {
        if self.grid != other.grid {
            return Err(WignerError::PlaneMismatch);
        }
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| a.conj() * b).sum::<C64>() * self.grid.spacing())
    }

    /// `|ψ(x)|²` at every sample.
    pub fn density(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }

    /// Fourier–Plancherel transform `(Fψ)(p) = (2π)^{−1/2} ∫ e^{−ipx} ψ(x) dx`
    /// by the lattice sum, evaluated on the same axis.
    pub fn fourier(&self) -> SampledWavefunction {
        let axis = self.grid.axis();
        let scale = self.grid.spacing() / (2.0 * PI).sqrt();
        let values = axis
            .iter()
            .map(|&p| axis.iter().zip(&self.values).map(|(&x, v)| v * C64::from_polar(1.0, -p * x)).sum::<C64>() * scale)
            .collect();
        Self { grid: self.grid.clone(), values }
    }
}

/// `h_0(x), …, h_{n−1}(x)` by the stable three-term recurrence.
pub(crate) fn hermite_functions(x: f64, n: usize) -> Vec<f64> {
    let mut h = Vec::with_capacity(n);
    if n == 0 {
        return h;
    }
    h.push(PI.powf(-0.25) * (-x * x / 2.0).exp());
    if n > 1 {
        h.push(2f64.sqrt() * x * h[0]);
    }
    for k in 1..n.saturating_sub(1) {
        let next = (2.0 / (k + 1) as f64).sqrt() * x * h[k] - (k as f64 / (k + 1) as f64).sqrt() * h[k - 1];
        h.push(next);
    }
    h
}
