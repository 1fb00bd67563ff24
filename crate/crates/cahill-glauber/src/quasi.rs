use group_reps::{Grid, TruncatedWeylSystem};
use operator_space::{Operator, C64};

use crate::{t_s_operator, CahillError, Regime, Result, SParameter};

/// Levels with `|t_n| ≤ LEVEL_CUTOFF·|t_0|` are dropped from probe sums.
const LEVEL_CUTOFF: f64 = 1e-17;

pub(crate) fn check_dim(sys: &TruncatedWeylSystem, a: &Operator) -> Result<()> {
    if a.dim() != sys.n_fock() {
        return Err(CahillError::DimensionMismatch { expected: sys.n_fock(), found: a.dim() });
    }
    Ok(())
}

/// A displaced `T_s(z)` with any warnings about its validity.
#[derive(Clone, Debug)]
pub struct DisplacedOperator {
    pub operator: Operator,
    /// Regime or truncation warning, if any.
    pub warning: Option<String>,
}

/// `T_s(z) = U(z) T_s U(z)†` with the truncated displacement, `z = (q, p)`.
pub fn displaced_t_s(s: SParameter, q: f64, p: f64, sys: &TruncatedWeylSystem) -> DisplacedOperator {
    let u = sys.displacement(q, p);
    let operator = &u * &t_s_operator(s, sys.n_fock()) * u.adjoint();
    let r = q.hypot(p);
    let reliable = sys.reliable_radius();
    let truncation = (r > reliable).then(|| {
        format!("displacement radius {r:.3} exceeds the reliable radius {reliable:.3} for n_fock = {}", sys.n_fock())
    });
    let warning = match (s.regime_warning(), truncation) {
        (Some(a), Some(b)) => Some(format!("{a}; {b}")),
        (a, b) => a.or(b),
    };
    DisplacedOperator { operator, warning }
}

/// `𝖠_s(z) = tr(T_s(z) a)` sampled on a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiDistribution {
    s: SParameter,
    grid: Grid,
    values: Vec<C64>,
    operator_ref: String,
}

impl QuasiDistribution {
    pub fn s(&self) -> SParameter {
        self.s
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn value(&self, k: usize) -> C64 {
        self.values[k]
    }

    /// Value at `(q_i, p_j)`.
    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.values[self.grid.index(i, j)]
    }

    /// Label of the source operator.
    pub fn operator_ref(&self) -> &str {
        &self.operator_ref
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.operator_ref = label.into();
        self
    }

    pub fn min_real(&self) -> f64 {
        self.values.iter().map(|v| v.re).fold(f64::INFINITY, f64::min)
    }

    pub fn max_imaginary(&self) -> f64 {
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }

    /// `Σ_z (h²/2π) 𝖠_s(z)`.
    pub fn integral(&self) -> C64 {
        self.values.iter().sum::<C64>() * self.grid.cell_weight()
    }
}

/// `𝖠_s(z) = Σ_n t_n ⟨U(z)n| a |U(z)n⟩` on every point of the system's grid.
///
/// The probe `T_s` must be bounded (`Re s ≤ 0`). For `Re s = 0` no level is
/// dropped and nothing is claimed about convergence in `n_fock`.
pub fn quasi_distribution(a: &Operator, s: SParameter, sys: &TruncatedWeylSystem) -> Result<QuasiDistribution> {
    s.require_bounded("a bounded probe T_s (Re s <= 0)")?;
    check_dim(sys, a)?;
    let n = sys.n_fock();
    let t = s.eigenvalues(n);
    let k = s.significant_levels(n, LEVEL_CUTOFF);
    let mut values = vec![C64::new(0.0, 0.0); sys.len()];
    sys.for_each_columns(k, |idx, v| {
        let av = a.matrix() * v;
        values[idx] = (0..k).map(|m| t[m] * v.column(m).dotc(&av.column(m))).sum();
    });
    Ok(QuasiDistribution { s, grid: sys.grid().clone(), values, operator_ref: "a".into() })
}

/// `|Σ_z (h²/2π) 𝖠_s(z) − tr a|` for trace-class `T_s`.
pub fn diagonal_trace_check(a: &Operator, s: SParameter, sys: &TruncatedWeylSystem) -> Result<f64> {
    s.require(Regime::TraceClass, "Re s < 0")?;
    let quasi = quasi_distribution(a, s, sys)?;
    Ok((quasi.integral() - a.trace()).norm())
}
