use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use operator_space::{hermitian_eigen, tol, Operator, Vector, C64};

use crate::{FrameError, PhaseFunction, Result, WeightedPointSet};

/// A frame `{ψ_x}` in `Cⁿ` over a weighted point set.
///
/// The metric operator, its inverse, the frame bounds and the dual vectors
/// `ψ^x = M⁻¹ψ_x` are computed once at construction.
#[derive(Clone, Debug)]
pub struct VectorFrame {
    points: Arc<WeightedPointSet>,
    vectors: Vec<Vector>,
    duals: Vec<Vector>,
    metric: Operator,
    metric_inv: Operator,
    bounds: (f64, f64),
}

impl VectorFrame {
    /// Builds the frame and its caches.
    ///
    /// Fails with [`FrameError::NotAFrame`] when the lower frame bound is
    /// below [`tol::FRAME_CONDITION`] times the upper one.
    pub fn new(points: Arc<WeightedPointSet>, vectors: Vec<Vector>) -> Result<Self> {
        if vectors.len() != points.len() {
            return Err(FrameError::LengthMismatch { expected: points.len(), found: vectors.len() });
        }
        let n = vectors[0].len();
        if n == 0 {
            return Err(FrameError::DimensionMismatch { expected: 1, found: 0 });
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return Err(FrameError::DimensionMismatch { expected: n, found: v.len() });
        }

        let mut m = DMatrix::<C64>::zeros(n, n);
        for (v, &w) in vectors.iter().zip(points.weights()) {
            m.ger(C64::new(w, 0.0), v, &v.conjugate(), C64::new(1.0, 0.0));
        }
        let metric = Operator::from_matrix(m)?;
        let (vals, vecs) = hermitian_eigen(&metric);
        let alpha = vals[0];
        let beta = vals[n - 1];
        if !(beta > 0.0) || alpha < tol::FRAME_CONDITION * beta {
            return Err(FrameError::NotAFrame { alpha, beta });
        }
        let inv_diag = DVector::from_iterator(n, vals.iter().map(|&l| C64::new(1.0 / l, 0.0)));
        let metric_inv = Operator::from_matrix(&vecs * DMatrix::from_diagonal(&inv_diag) * vecs.adjoint())?;
        let duals = vectors.iter().map(|v| metric_inv.apply(v)).collect();

        Ok(Self { points, vectors, duals, metric, metric_inv, bounds: (alpha, beta) })
    }

    pub fn points(&self) -> &Arc<WeightedPointSet> {
        &self.points
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn vector(&self, x: usize) -> &Vector {
        &self.vectors[x]
    }

    /// The dual vectors `ψ^x = M⁻¹ψ_x`.
    pub fn dual_vectors(&self) -> &[Vector] {
        &self.duals
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.vectors[0].len()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// `M = Σ_x μ(x) |ψ_x⟩⟨ψ_x|`.
    pub fn metric_operator(&self) -> &Operator {
        &self.metric
    }

    pub fn metric_inverse(&self) -> &Operator {
        &self.metric_inv
    }

    /// `(α, β)`: the extreme eigenvalues of the metric operator.
    pub fn frame_bounds(&self) -> (f64, f64) {
        self.bounds
    }

    /// `β / α`.
    pub fn condition_number(&self) -> f64 {
        self.bounds.1 / self.bounds.0
    }

    /// `β − α ≤ tol·β`.
    pub fn is_tight(&self, tol: f64) -> bool {
        let (a, b) = self.bounds;
        b - a <= tol * b
    }

    fn check_vector(&self, phi: &Vector) -> Result<()> {
        if phi.len() != self.dim() {
            return Err(FrameError::DimensionMismatch { expected: self.dim(), found: phi.len() });
        }
        Ok(())
    }

    fn check_function(&self, f: &PhaseFunction) -> Result<()> {
        if Arc::ptr_eq(f.points(), &self.points) || **f.points() == *self.points {
            Ok(())
        } else {
            Err(FrameError::PointSetMismatch)
        }
    }

    fn check_index(&self, x: usize) -> Result<()> {
        if x >= self.len() {
            return Err(FrameError::IndexOutOfRange { index: x, len: self.len() });
        }
        Ok(())
    }

    /// Frame transform `(Fφ)(x) = ⟨ψ_x, φ⟩`.
    pub fn analyze(&self, phi: &Vector) -> Result<PhaseFunction> {
        self.check_vector(phi)?;
        PhaseFunction::new(self.points.clone(), self.vectors.iter().map(|v| v.dotc(phi)).collect())
    }

    /// Adjoint transform `F*Φ = Σ_x μ(x) Φ(x) ψ_x`.
    pub fn synthesize(&self, f: &PhaseFunction) -> Result<Vector> {
        self.check_function(f)?;
        Ok(combine(&self.vectors, self.points.weights(), f.values(), self.dim()))
    }

    /// The dual frame `{ψ^x}`, whose metric operator is `M⁻¹`.
    pub fn dual_frame(&self) -> Result<VectorFrame> {
        VectorFrame::new(self.points.clone(), self.duals.clone())
    }

    /// Pseudo-inverse `F←Φ = Σ_x μ(x) Φ(x) ψ^x`; the identity on `H` after
    /// [`analyze`](Self::analyze) and zero on `Ran(F)^⊥`.
    pub fn pseudo_inverse_apply(&self, f: &PhaseFunction) -> Result<Vector> {
        self.check_function(f)?;
        Ok(combine(&self.duals, self.points.weights(), f.values(), self.dim()))
    }

    /// `κ(x, x') = ⟨ψ_x, ψ^{x'}⟩`.
    pub fn reproducing_kernel(&self, x: usize, xp: usize) -> Result<C64> {
        self.check_index(x)?;
        self.check_index(xp)?;
        Ok(self.vectors[x].dotc(&self.duals[xp]))
    }

    /// The matrix `[κ(x, x')]`.
    pub fn kernel_matrix(&self) -> DMatrix<C64> {
        let n = self.len();
        DMatrix::from_fn(n, n, |x, xp| self.vectors[x].dotc(&self.duals[xp]))
    }

    /// Orthogonal projection `P = F F←` onto `Ran(F)`:
    /// `(PΦ)(x) = Σ_{x'} μ(x') κ(x, x') Φ(x')`.
    pub fn project_onto_range(&self, f: &PhaseFunction) -> Result<PhaseFunction> {
        let v = self.pseudo_inverse_apply(f)?;
        self.analyze(&v)
    }

    /// `κ(a; x, x') = ⟨ψ_x, a ψ^{x'}⟩`.
    pub fn operator_kernel(&self, a: &Operator, x: usize, xp: usize) -> Result<C64> {
        self.check_operator(a)?;
        self.check_index(x)?;
        self.check_index(xp)?;
        Ok(self.vectors[x].dotc(&a.apply(&self.duals[xp])))
    }

    /// Applies `κ(a; ·, ·)` as an integral kernel:
    /// `Φ ↦ Σ_{x'} μ(x') κ(a; ·, x') Φ(x')`, which maps `Fφ` to `F(aφ)`.
    pub fn apply_operator_kernel(&self, a: &Operator, f: &PhaseFunction) -> Result<PhaseFunction> {
        self.check_operator(a)?;
        self.check_function(f)?;
        let n = self.len();
        let w = self.points.weights();
        let ad: Vec<Vector> = self.duals.iter().map(|d| a.apply(d)).collect();
        let values = (0..n)
            .map(|x| (0..n).map(|xp| self.vectors[x].dotc(&ad[xp]) * f.value(xp) * w[xp]).sum())
            .collect();
        PhaseFunction::new(self.points.clone(), values)
    }

    /// `Σ_x μ(x) κ(a; x, x)`, which equals `tr a`.
    pub fn trace_via_frame(&self, a: &Operator) -> Result<C64> {
        self.check_operator(a)?;
        Ok(self
            .vectors
            .iter()
            .zip(&self.duals)
            .zip(self.points.weights())
            .map(|((v, d), &w)| v.dotc(&a.apply(d)) * w)
            .sum())
    }

    /// Diagonal values `κ(a; x, x)`.
    pub fn diagonal_kernel(&self, a: &Operator) -> Result<Vec<C64>> {
        self.check_operator(a)?;
        Ok(self.vectors.iter().zip(&self.duals).map(|(v, d)| v.dotc(&a.apply(d))).collect())
    }

    fn check_operator(&self, a: &Operator) -> Result<()> {
        if a.dim() != self.dim() {
            return Err(FrameError::DimensionMismatch { expected: self.dim(), found: a.dim() });
        }
        Ok(())
    }
}

fn combine(vectors: &[Vector], weights: &[f64], coeffs: &[C64], n: usize) -> Vector {
    let mut out = Vector::zeros(n);
    for ((v, &w), &c) in vectors.iter().zip(weights).zip(coeffs) {
        out.axpy(c * w, v, C64::new(1.0, 0.0));
    }
    out
}
