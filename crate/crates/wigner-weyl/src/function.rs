use operator_space::C64;

use crate::{Grid, Result, WignerError};

/// Where a phase-space function lives.
#[derive(Clone, Debug, PartialEq)]
pub enum PhasePlane {
    /// The `(q, p)` lattice of a [`Grid`].
    Grid(Grid),
    /// `Z_d × Z_d`, element `(q, p)` at index `q·d + p`.
    Finite(usize),
}

impl PhasePlane {
    pub fn len(&self) -> usize {
        match self {
            PhasePlane::Grid(g) => g.len(),
            PhasePlane::Finite(d) => d * d,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Side length: samples per axis, or `d`.
    pub fn side(&self) -> usize {
        match self {
            PhasePlane::Grid(g) => g.side(),
            PhasePlane::Finite(d) => *d,
        }
    }

    /// Integration weight per point for plain `dq dp` integrals; the finite
    /// plane uses the Haar weight `1/d`.
    pub fn area_element(&self) -> f64 {
        match self {
            PhasePlane::Grid(g) => g.area_element(),
            PhasePlane::Finite(d) => 1.0 / *d as f64,
        }
    }

    /// Coordinates of point `k`; integer coordinates on the finite plane.
    pub fn point(&self, k: usize) -> (f64, f64) {
        match self {
            PhasePlane::Grid(g) => g.point(k),
            PhasePlane::Finite(d) => ((k / d) as f64, (k % d) as f64),
        }
    }
}

/// Which distribution a [`WignerFunction`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WignerKind {
    Wigner,
    FourierWigner,
    /// A Cahill–Glauber `s`-ordered quasi-distribution.
    SParam,
}

/// Sampled phase-space distribution, indexed like its [`PhasePlane`].
#[derive(Clone, Debug, PartialEq)]
pub struct WignerFunction {
    plane: PhasePlane,
    values: Vec<C64>,
    kind: WignerKind,
}

impl WignerFunction {
    pub fn new(plane: PhasePlane, values: Vec<C64>, kind: WignerKind) -> Result<Self> {
        if values.len() != plane.len() {
            return Err(WignerError::LengthMismatch { expected: plane.len(), found: values.len() });
        }
        Ok(Self { plane, values, kind })
    }

    pub fn plane(&self) -> &PhasePlane {
        &self.plane
    }

    pub fn kind(&self) -> WignerKind {
        self.kind
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn value(&self, k: usize) -> C64 {
        self.values[k]
    }

    /// Value at axis indices `(i, j)`.
    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.values[i * self.plane.side() + j]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn with_kind(self, kind: WignerKind) -> Self {
        Self { kind, ..self }
    }

    fn check_plane(&self, other: &WignerFunction) -> Result<()> {
        if self.plane == other.plane {
            Ok(())
        } else {
            Err(WignerError::PlaneMismatch)
        }
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    /// `max |Im f|`.
    pub fn max_imaginary(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.im.abs()))
    }

    /// `max |f|`.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    /// `min Re f`.
    pub fn min_real(&self) -> f64 {
        self.values.iter().fold(f64::INFINITY, |m, v| m.min(v.re))
    }

    /// `∫∫ f dq dp`.
    pub fn integral(&self) -> C64 {
        self.values.iter().sum::<C64>() * self.plane.area_element()
    }

    /// `∫∫ f* g dq dp`.
    pub fn inner(&self, other: &WignerFunction) -> Result<C64> {
        self.check_plane(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| a.conj() * b).sum::<C64>() * self.plane.area_element())
    }

    /// `max |f − g|`.
    pub fn sup_distance(&self, other: &WignerFunction) -> Result<f64> {
        self.check_plane(other)?;
        Ok(self.values.iter().zip(&other.values).fold(0.0, |m, (a, b)| m.max((a - b).norm())))
    }

    /// Pointwise complex conjugate.
    pub fn conj(&self) -> Self {
        Self { values: self.values.iter().map(|v| v.conj()).collect(), ..self.clone() }
    }

    /// `q ↦ ∫ f(q, p) dp`, one value per `q` sample.
    pub fn marginal_q(&self) -> Vec<C64> {
        let n = self.plane.side();
        let step = self.axis_step();
        (0..n).map(|i| self.values[i * n..(i + 1) * n].iter().sum::<C64>() * step).collect()
    }

    /// `p ↦ ∫ f(q, p) dq`, one value per `p` sample.
    pub fn marginal_p(&self) -> Vec<C64> {
        let n = self.plane.side();
        let step = self.axis_step();
        (0..n).map(|j| (0..n).map(|i| self.values[i * n + j]).sum::<C64>() * step).collect()
    }

    fn axis_step(&self) -> f64 {
        match &self.plane {
            PhasePlane::Grid(g) => g.spacing(),
            PhasePlane::Finite(d) => 1.0 / (*d as f64).sqrt(),
        }
    }
}
