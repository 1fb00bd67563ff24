use std::fmt;

use group_reps::Grid;
use operator_space::{Operator, C64};

use crate::{CahillError, Result};

/// Default truncated Fock dimension.
pub const DEFAULT_N_FOCK: usize = 60;

const REAL_PART_TOL: f64 = 1e-12;

/// `[−6.5, 6.5]²` with `h = 0.1`: `e^{−L²/2} < 1e−8`.
pub fn default_grid() -> Grid {
    Grid::new(6.5, 0.1).expect("valid grid")
}

/// Operator class of `T_s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// `Re s < 0`.
    TraceClass,
    /// `Re s = 0`.
    BoundedOnly,
    /// `Re s > 0`, `s ≠ 1`.
    Unbounded,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::TraceClass => "trace_class",
            Regime::BoundedOnly => "bounded_only",
            Regime::Unbounded => "unbounded",
        })
    }
}

/// A complex `s ≠ 1` with its regime.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SParameter {
    s: C64,
}

impl SParameter {
    pub fn new(s: C64) -> Result<Self> {
        if (s - 1.0).norm() < 1e-12 {
            return Err(CahillError::SEqualsOne);
        }
        Ok(Self { s })
    }

    pub fn real(s: f64) -> Result<Self> {
        Self::new(C64::new(s, 0.0))
    }

    pub fn value(&self) -> C64 {
        self.s
    }

    /// `−s`, always valid since `s = −1` is.
    pub fn negated(&self) -> Self {
        Self { s: -self.s }
    }

    pub fn regime(&self) -> Regime {
        let re = self.s.re;
        if re.abs() <= REAL_PART_TOL {
            Regime::BoundedOnly
        } else if re < 0.0 {
            Regime::TraceClass
        } else {
            Regime::Unbounded
        }
    }

    /// Set for the unbounded regime, whose truncation is only formal.
    pub fn regime_warning(&self) -> Option<String> {
        match self.regime() {
            Regime::Unbounded => Some(format!(
                "formal object: T_s is unbounded for s = {}; its Fock truncation does not converge",
                self.s
            )),
            _ => None,
        }
    }

    pub(crate) fn require(&self, regime: Regime, required: &'static str) -> Result<()> {
        if self.regime() != regime {
            return Err(CahillError::RegimeMismatch { s: self.s, regime: self.regime(), required });
        }
        Ok(())
    }

    pub(crate) fn require_bounded(&self, required: &'static str) -> Result<()> {
        if self.regime() == Regime::Unbounded {
            return Err(CahillError::RegimeMismatch { s: self.s, regime: self.regime(), required });
        }
        Ok(())
    }

    /// `r = (s+1)/(s−1)`.
    pub fn ratio(&self) -> C64 {
        (self.s + 1.0) / (self.s - 1.0)
    }

    /// `2/(1−s)`.
    pub fn prefactor(&self) -> C64 {
        C64::new(2.0, 0.0) / (C64::new(1.0, 0.0) - self.s)
    }

    /// Eigenvalues `t_n = (2/(1−s)) rⁿ`, `n < n_fock`.
    pub fn eigenvalues(&self, n_fock: usize) -> Vec<C64> {
        let r = self.ratio();
        let mut t = self.prefactor();
        (0..n_fock)
            .map(|_| {
                let v = t;
                t *= r;
                v
            })
            .collect()
    }

    /// Number of leading levels with `|t_n| > rel·|t_0|`, at most `n_fock`.
    pub(crate) fn significant_levels(&self, n_fock: usize, rel: f64) -> usize {
        let r = self.ratio().norm();
        if r >= 1.0 {
            return n_fock;
        }
        let k = (rel.ln() / r.ln()).ceil().max(0.0) as usize + 1;
        k.min(n_fock)
    }
}

/// `T_s` truncated to the first `n_fock` Fock levels. Any regime; see
/// [`SParameter::regime_warning`].
pub fn t_s_operator(s: SParameter, n_fock: usize) -> Operator {
    Operator::from_diagonal(&s.eigenvalues(n_fock))
}

/// Computed norms of the truncated `T_s` with their closed forms and
/// truncation-tail bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormReport {
    pub op_norm: f64,
    pub hs_norm: f64,
    pub trace_norm: f64,
    pub trace: C64,
    /// `|2/(1−s)|`.
    pub expected_op_norm: f64,
    /// `1/√|Re s|`.
    pub expected_hs_norm: f64,
    /// `2/(|1−s| − |1+s|)`.
    pub expected_trace_norm: f64,
    /// `1`.
    pub expected_trace: C64,
    /// `|t_0| |r|^N / (1 − |r|)`: bounds the trace and trace-norm deficits.
    pub trace_tail: f64,
    /// `|t_0|² |r|^{2N} / ((1 − |r|²) · 1/√|Re s|)`: bounds the HS-norm deficit.
    pub hs_tail: f64,
}

impl NormReport {
    /// Largest closed-form residual in excess of its tail bound.
    pub fn excess_over_tail(&self) -> f64 {
        let op = (self.op_norm - self.expected_op_norm).abs();
        let hs = ((self.hs_norm - self.expected_hs_norm).abs() - self.hs_tail).max(0.0);
        let tn = ((self.trace_norm - self.expected_trace_norm).abs() - self.trace_tail).max(0.0);
        let tr = ((self.trace - self.expected_trace).norm() - self.trace_tail).max(0.0);
        op.max(hs).max(tn).max(tr)
    }
}

/// Norms of `T_s` truncated at `n_fock`, trace-class regime only.
pub fn t_s_norm_report(s: SParameter, n_fock: usize) -> Result<NormReport> {
    s.require(Regime::TraceClass, "Re s < 0")?;
    let t = t_s_operator(s, n_fock);
    let z = s.value();
    let t0 = s.prefactor().norm();
    let r = s.ratio().norm();
    let expected_hs_norm = 1.0 / z.re.abs().sqrt();
    Ok(NormReport {
        op_norm: t.op_norm(),
        hs_norm: t.hs_norm(),
        trace_norm: t.trace_norm(),
        trace: t.trace(),
        expected_op_norm: t0,
        expected_hs_norm,
        expected_trace_norm: 2.0 / ((C64::new(1.0, 0.0) - z).norm() - (z + 1.0).norm()),
        expected_trace: C64::new(1.0, 0.0),
        trace_tail: t0 * r.powi(n_fock as i32) / (1.0 - r),
        hs_tail: t0 * t0 * r.powi(2 * n_fock as i32) / (1.0 - r * r) / expected_hs_norm,
    })
}
