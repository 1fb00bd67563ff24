use std::borrow::Cow;
use std::sync::Arc;

use frame_engine::WeightedPointSet;
use group_reps::ProjectiveRep;
use nalgebra::{DMatrix, DVector};
use operator_space::{outer, sample, Operator, Vector, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{BiPhaseFunction, HsFrameError, Result};

/// Frame elements are kept in memory up to this Hilbert space dimension.
const CACHE_MAX_DIM: usize = 5;

const FRAME_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-10;
const HERMITIAN_TOL: f64 = 1e-10;

/// How [`OperatorFrame::star_product`] is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarPath {
    /// `D_T((Q_T Φ₁)(Q_T Φ₂))`.
    Operator,
    /// Double sum against the trikernel `κ(y, y₁, y₂)`.
    Kernel,
}

/// `|ψ⟩⟨ψ|`; unit trace iff `‖ψ‖ = 1`.
pub fn fiducial_projector(psi: &Vector) -> Operator {
    outer(psi, psi)
}

/// The tight frame `T(g₁, g₂) = U(g₁) T U(g₂)†` on `G × G`.
#[derive(Clone, Debug)]
pub struct OperatorFrame {
    rep: ProjectiveRep,
    analyzer: Operator,
    points: Arc<WeightedPointSet>,
    elements: Option<Vec<DMatrix<C64>>>,
    synthesis: Option<DMatrix<C64>>,
}

fn vec_of(m: &DMatrix<C64>) -> DVector<C64> {
    DVector::from_column_slice(m.as_slice())
}

fn hs(a: &DMatrix<C64>, b: &DMatrix<C64>) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

fn hermitian_check(a: &Operator) -> Result<()> {
    let defect = a.hermitian_defect();
    if defect > HERMITIAN_TOL * a.hs_norm().max(1.0) {
        return Err(HsFrameError::NotSelfAdjoint { defect });
    }
    Ok(())
}

impl OperatorFrame {
    /// Builds the frame and certifies tightness: the metric operator on
    /// `B₂(H)` must equal the identity to `1e−10`.
    pub fn new(rep: ProjectiveRep, analyzer: Operator) -> Result<Self> {
        if analyzer.dim() != rep.dim() {
            return Err(HsFrameError::DimensionMismatch { expected: rep.dim(), found: analyzer.dim() });
        }
        if !rep.group().has_uniform_weight() {
            return Err(HsFrameError::InvalidFrame("representation group must be unimodular".into()));
        }
        let du = rep.duflo_constant();
        if (du - 1.0).abs() > 1e-12 {
            return Err(HsFrameError::InvalidFrame(format!("Duflo–Moore constant {du} is not 1")));
        }
        let norm = analyzer.hs_norm();
        if (norm - 1.0).abs() > FRAME_TOL {
            return Err(HsFrameError::InvalidFrame(format!("analyzing operator has HS norm {norm}")));
        }
        let gp = rep.group().points();
        let points = Arc::new(gp.product(gp));
        let mut frame = Self { rep, analyzer, points, elements: None, synthesis: None };

        let elements = frame.build_elements();
        let synthesis = Self::stack(&elements);
        let n = frame.dim();
        let w = frame.weights_vector();
        let metric = &synthesis * DMatrix::from_diagonal(&w) * synthesis.adjoint();
        let defect = (metric - DMatrix::<C64>::identity(n * n, n * n)).iter().map(|c| c.norm()).fold(0.0, f64::max);
        if defect > FRAME_TOL {
            return Err(HsFrameError::InvalidFrame(format!("metric operator differs from identity by {defect:.3e}")));
        }
        if n <= CACHE_MAX_DIM {
            frame.elements = Some(elements);
            frame.synthesis = Some(synthesis);
        }
        Ok(frame)
    }

    /// Frame with the analyzing operator `|0⟩⟨0|`.
    pub fn with_default_analyzer(rep: ProjectiveRep) -> Result<Self> {
        let t = Operator::unit(rep.dim(), 0, 0);
        Self::new(rep, t)
    }

    /// The fiducial state `|0⟩⟨0|` used for γ-kernels by default.
    pub fn default_fiducial(&self) -> Operator {
        Operator::unit(self.dim(), 0, 0)
    }

    pub fn rep(&self) -> &ProjectiveRep {
        &self.rep
    }

    pub fn analyzer(&self) -> &Operator {
        &self.analyzer
    }

    pub fn points(&self) -> &Arc<WeightedPointSet> {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn order(&self) -> usize {
        self.rep.order()
    }

    /// Number of points `|G|²`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index of `(g₁, g₂)`.
    pub fn point(&self, g1: usize, g2: usize) -> usize {
        g1 * self.order() + g2
    }

    /// `(g₁, g₂)` of index `y`.
    pub fn coordinates(&self, y: usize) -> (usize, usize) {
        (y / self.order(), y % self.order())
    }

    fn weights_vector(&self) -> DVector<C64> {
        DVector::from_iterator(self.len(), self.points.weights().iter().map(|&w| C64::new(w, 0.0)))
    }

    fn build_elements(&self) -> Vec<DMatrix<C64>> {
        let t = self.analyzer.matrix();
        let us: Vec<&DMatrix<C64>> = self.rep.matrices().iter().map(|u| u.matrix()).collect();
        let uts: Vec<DMatrix<C64>> = us.iter().map(|u| *u * t).collect();
        let udag: Vec<DMatrix<C64>> = us.iter().map(|u| u.adjoint()).collect();
        let n = self.order();
        (0..n * n).map(|y| &uts[y / n] * &udag[y % n]).collect()
    }

    fn stack(elements: &[DMatrix<C64>]) -> DMatrix<C64> {
        let rows = elements.first().map_or(0, |m| m.len());
        let mut s = DMatrix::<C64>::zeros(rows, elements.len());
        for (y, m) in elements.iter().enumerate() {
            s.column_mut(y).copy_from_slice(m.as_slice());
        }
        s
    }

    fn elements(&self) -> Cow<'_, [DMatrix<C64>]> {
        match &self.elements {
            Some(e) => Cow::Borrowed(e),
            None => Cow::Owned(self.build_elements()),
        }
    }

    /// `dim² × |G|²` matrix whose columns are the flattened `T(y)`.
    fn synthesis(&self) -> Cow<'_, DMatrix<C64>> {
        match &self.synthesis {
            Some(s) => Cow::Borrowed(s),
            None => Cow::Owned(Self::stack(&self.build_elements())),
        }
    }

    /// `T(y)` as an operator.
    pub fn element(&self, y: usize) -> Operator {
        let (g1, g2) = self.coordinates(y);
        let u1 = self.rep.matrix(g1);
        let u2 = self.rep.matrix(g2);
        u1 * &self.analyzer * u2.adjoint()
    }

    fn check_operator(&self, a: &Operator) -> Result<()> {
        if a.dim() != self.dim() {
            return Err(HsFrameError::DimensionMismatch { expected: self.dim(), found: a.dim() });
        }
        Ok(())
    }

    fn check_function(&self, f: &BiPhaseFunction) -> Result<()> {
        if f.order() != self.order() || **f.points() != *self.points {
            return Err(HsFrameError::DomainMismatch);
        }
        Ok(())
    }

    fn function(&self, values: Vec<C64>) -> BiPhaseFunction {
        BiPhaseFunction::new(self.order(), self.points.clone(), values).expect("frame-sized values")
    }

    /// Builds a function on this frame's `G × G` from `(g₁, g₂) ↦ f`.
    pub fn function_from_fn(&self, mut f: impl FnMut(usize, usize) -> C64) -> BiPhaseFunction {
        let n = self.order();
        self.function((0..n * n).map(|y| f(y / n, y % n)).collect())
    }

    pub fn zero_function(&self) -> BiPhaseFunction {
        self.function(vec![C64::new(0.0, 0.0); self.len()])
    }

    /// `(D_T a)(y) = ⟨T(y), a⟩_HS`.
    pub fn dequantize(&self, a: &Operator) -> Result<BiPhaseFunction> {
        self.check_operator(a)?;
        let v = self.synthesis().adjoint() * vec_of(a.matrix());
        Ok(self.function(v.iter().cloned().collect()))
    }

    /// `Q_T Φ = Σ_y μ⊗μ(y) Φ(y) T(y)`.
    pub fn quantize(&self, phi: &BiPhaseFunction) -> Result<Operator> {
        self.check_function(phi)?;
        let wphi = DVector::from_iterator(
            self.len(),
            phi.values().iter().zip(self.points.weights()).map(|(v, &w)| v * w),
        );
        let v = self.synthesis().as_ref() * wphi;
        let n = self.dim();
        Ok(Operator::from_matrix(DMatrix::from_column_slice(n, n, v.as_slice()))?)
    }

    /// Orthogonal projection `D_T Q_T` onto `Ran(D_T)`.
    pub fn project(&self, phi: &BiPhaseFunction) -> Result<BiPhaseFunction> {
        self.dequantize(&self.quantize(phi)?)
    }

    /// `|⟨D_T a, D_S b⟩ − ⟨a, b⟩_HS ⟨S, T⟩_HS|` for `S` the analyzer of `other`.
    pub fn orthogonality_check(&self, other: &OperatorFrame, a: &Operator, b: &Operator) -> Result<f64> {
        if self.rep.matrices() != other.rep.matrices() || self.rep.group().haar_weights() != other.rep.group().haar_weights() {
            return Err(HsFrameError::FrameMismatch);
        }
        self.check_operator(b)?;
        let lhs = self.dequantize(a)?.inner(&other.dequantize(b)?)?;
        let rhs = a.hs_inner(b) * other.analyzer.hs_inner(&self.analyzer);
        Ok((lhs - rhs).norm())
    }

    /// `κ(y, y₁, y₂) = tr(T(y)† T(y₁) T(y₂))`.
    pub fn star_kernel(&self, y: usize, y1: usize, y2: usize) -> C64 {
        let p = self.element(y1) * self.element(y2);
        self.element(y).hs_inner(&p)
    }

    /// Extended star product `Φ₁ ⋆ Φ₂`.
    pub fn star_product(&self, phi1: &BiPhaseFunction, phi2: &BiPhaseFunction, path: StarPath) -> Result<BiPhaseFunction> {
        self.check_function(phi1)?;
        self.check_function(phi2)?;
        match path {
            StarPath::Operator => self.dequantize(&(self.quantize(phi1)? * self.quantize(phi2)?)),
            StarPath::Kernel => {
                let els = self.elements();
                let w = self.points.weights();
                let mut out = vec![C64::new(0.0, 0.0); self.len()];
                for (y1, t1) in els.iter().enumerate() {
                    let c1 = phi1.value(y1) * w[y1];
                    if c1 == C64::new(0.0, 0.0) {
                        continue;
                    }
                    for (y2, t2) in els.iter().enumerate() {
                        let c = c1 * phi2.value(y2) * w[y2];
                        if c == C64::new(0.0, 0.0) {
                            continue;
                        }
                        let p = t1 * t2;
                        for (o, t) in out.iter_mut().zip(els.iter()) {
                            *o += c * hs(t, &p);
                        }
                    }
                }
                Ok(self.function(out))
            }
        }
    }

    fn mapped_kernel(&self, f: impl Fn(&DMatrix<C64>) -> DMatrix<C64>) -> DMatrix<C64> {
        let els = self.elements();
        let mapped: Vec<DMatrix<C64>> = els.iter().map(f).collect();
        self.synthesis().adjoint() * Self::stack(&mapped)
    }

    /// `χ^L(a; y, y′) = ⟨T(y), a T(y′)⟩_HS`.
    pub fn left_kernel(&self, a: &Operator, y: usize, yp: usize) -> Result<C64> {
        self.check_operator(a)?;
        Ok(self.element(y).hs_inner(&(a * &self.element(yp))))
    }

    /// `χ^R(a; y, y′) = ⟨T(y), T(y′) a⟩_HS`.
    pub fn right_kernel(&self, a: &Operator, y: usize, yp: usize) -> Result<C64> {
        self.check_operator(a)?;
        Ok(self.element(y).hs_inner(&(&self.element(yp) * a)))
    }

    /// All entries of `χ^L(a)` as a `|G|² × |G|²` matrix.
    pub fn left_kernel_matrix(&self, a: &Operator) -> Result<DMatrix<C64>> {
        self.check_operator(a)?;
        Ok(self.mapped_kernel(|t| a.matrix() * t))
    }

    /// All entries of `χ^R(a)`.
    pub fn right_kernel_matrix(&self, a: &Operator) -> Result<DMatrix<C64>> {
        self.check_operator(a)?;
        Ok(self.mapped_kernel(|t| t * a.matrix()))
    }

    /// `(K ∘ K′)(y, y′) = Σ_z μ⊗μ(z) K(y, z) K′(z, y′)`.
    pub fn compose_kernels(&self, k1: &DMatrix<C64>, k2: &DMatrix<C64>) -> DMatrix<C64> {
        k1 * DMatrix::from_diagonal(&self.weights_vector()) * k2
    }

    fn apply_kernel(&self, k: &DMatrix<C64>, phi: &BiPhaseFunction) -> Result<BiPhaseFunction> {
        self.check_function(phi)?;
        let wphi = DVector::from_iterator(
            self.len(),
            phi.values().iter().zip(self.points.weights()).map(|(v, &w)| v * w),
        );
        Ok(self.function((k * wphi).iter().cloned().collect()))
    }

    /// `Φ ↦ ∫ χ^L(a; ·, y′) Φ(y′)`; sends `D_T b` to `D_T(ab)`.
    pub fn apply_left_kernel(&self, a: &Operator, phi: &BiPhaseFunction) -> Result<BiPhaseFunction> {
        self.apply_kernel(&self.left_kernel_matrix(a)?, phi)
    }

    /// `Φ ↦ ∫ χ^R(a; ·, y′) Φ(y′)`; sends `D_T b` to `D_T(ba)`.
    pub fn apply_right_kernel(&self, a: &Operator, phi: &BiPhaseFunction) -> Result<BiPhaseFunction> {
        self.apply_kernel(&self.right_kernel_matrix(a)?, phi)
    }

    /// `δ(y₁, y₂) = ⟨T(y₁), T(y₂)†⟩_HS`.
    pub fn delta_kernel_matrix(&self) -> DMatrix<C64> {
        self.mapped_kernel(|t| t.adjoint())
    }

    /// Both directions between `B = D_T b` and `χ^L(b)`:
    /// `χ^L(b; y₁, y₂) = ∫ κ(y₁, y₃, y₂) B(y₃)` and
    /// `B(y) = Σ_g μ(g) ∫∫ γ(g, y₁) χ^L(b; y₁, y₂) δ(y₂, y)` with the default
    /// fiducial. Returns the larger sup-norm residual.
    pub fn kernel_roundtrip(&self, b: &Operator) -> Result<f64> {
        let bf = self.dequantize(b)?;
        let direct = self.left_kernel_matrix(b)?;
        let els = self.elements();
        let w = self.points.weights();
        let n = self.len();

        let mut via_kappa = DMatrix::<C64>::zeros(n, n);
        for (y3, t3) in els.iter().enumerate() {
            let c = bf.value(y3) * w[y3];
            if c == C64::new(0.0, 0.0) {
                continue;
            }
            for (y2, t2) in els.iter().enumerate() {
                let p = t3 * t2;
                for (y1, t1) in els.iter().enumerate() {
                    via_kappa[(y1, y2)] += c * hs(t1, &p);
                }
            }
        }
        let forward = (&via_kappa - &direct).iter().map(|c| c.norm()).fold(0.0, f64::max);

        let gamma = self.gamma_matrix(&self.default_fiducial())?;
        let wv = self.weights_vector();
        let mu = DVector::from_iterator(self.order(), self.rep.group().haar_weights().iter().map(|&m| C64::new(m, 0.0)));
        let row = (gamma.transpose() * mu).component_mul(&wv).transpose();
        let recovered = row * &direct * DMatrix::from_diagonal(&wv) * self.delta_kernel_matrix();
        let backward = recovered.iter().zip(bf.values()).map(|(r, v)| (r - v).norm()).fold(0.0, f64::max);

        Ok(forward.max(backward))
    }

    fn check_fiducial(&self, s: &Operator) -> Result<()> {
        self.check_operator(s)?;
        let trace = s.trace();
        if (trace - 1.0).norm() > TRACE_TOL {
            return Err(HsFrameError::InvalidNormalization { trace });
        }
        Ok(())
    }

    /// `γ(g, y) = ⟨U(g) S U(g)†, T(y)⟩_HS`, requiring `tr S = 1`.
    pub fn gamma_kernel(&self, s: &Operator, g: usize, y: usize) -> Result<C64> {
        self.check_fiducial(s)?;
        let u = self.rep.matrix(g);
        Ok((u * s * u.adjoint()).hs_inner(&self.element(y)))
    }

    /// All of `γ` as a `|G| × |G|²` matrix.
    pub fn gamma_matrix(&self, s: &Operator) -> Result<DMatrix<C64>> {
        self.check_fiducial(s)?;
        let syn = self.synthesis();
        let mut out = DMatrix::<C64>::zeros(self.order(), self.len());
        for (g, u) in self.rep.matrices().iter().enumerate() {
            let moved = u * s * u.adjoint();
            let row = syn.adjoint() * vec_of(moved.matrix());
            for (y, v) in row.iter().enumerate() {
                out[(g, y)] = v.conj();
            }
        }
        Ok(out)
    }

    /// `Σ_g μ(g) Σ_y μ⊗μ(y) γ(g, y) ρ(y)`, which is `tr(Q_T ρ)`.
    pub fn trace_triple(&self, s: &Operator, rho: &BiPhaseFunction) -> Result<C64> {
        self.check_function(rho)?;
        let gamma = self.gamma_matrix(s)?;
        let w = self.points.weights();
        let mu = self.rep.group().haar_weights();
        let mut total = C64::new(0.0, 0.0);
        for g in 0..self.order() {
            let inner: C64 = (0..self.len()).map(|y| gamma[(g, y)] * w[y] * rho.value(y)).sum();
            total += inner * mu[g];
        }
        Ok(total)
    }

    fn analyzer_trace(&self) -> Result<C64> {
        let t = self.analyzer.trace();
        if t.norm() <= TRACE_TOL {
            return Err(HsFrameError::DegenerateAnalyzer { trace: t.norm() });
        }
        Ok(t)
    }

    fn diagonal_sum(&self, f: &BiPhaseFunction) -> C64 {
        let mu = self.rep.group().haar_weights();
        (0..self.order()).map(|g| f.at(g, g) * mu[g]).sum()
    }

    /// `tr(T)*⁻¹ Σ_g μ(g) (D_T ρ)(g, g)`, which equals `tr ρ`.
    pub fn trace_diagonal(&self, rho: &Operator) -> Result<C64> {
        let t = self.analyzer_trace()?;
        Ok(self.diagonal_sum(&self.dequantize(rho)?) / t.conj())
    }

    /// `|Σ_g μ(g) (D_T ρ)(g, g)| / √(Σ_g μ(g) (D_T T)(g, g))`, which equals
    /// `|tr ρ|` without reference to `tr T`.
    pub fn trace_diagonal_modulus(&self, rho: &Operator) -> Result<f64> {
        self.analyzer_trace()?;
        let num = self.diagonal_sum(&self.dequantize(rho)?).norm();
        let den = self.diagonal_sum(&self.dequantize(&self.analyzer)?).re.sqrt();
        Ok(num / den)
    }

    fn triple_sum(&self, s: &Operator, kernel: &DMatrix<C64>, rho: &Operator) -> Result<C64> {
        let rf = self.dequantize(rho)?;
        let image = self.apply_kernel(kernel, &rf)?;
        self.trace_triple(s, &image)
    }

    /// `Σ_g Σ_y Σ_{y′} γ(g, y) χ^L(a; y, y′) ρ(y′) = tr(aρ)`.
    pub fn expectation(&self, s: &Operator, a: &Operator, rho: &Operator) -> Result<C64> {
        self.triple_sum(s, &self.left_kernel_matrix(a)?, rho)
    }

    /// The same sum against `χ^R(a)`, giving `tr(ρa)`.
    pub fn expectation_right(&self, s: &Operator, a: &Operator, rho: &Operator) -> Result<C64> {
        self.triple_sum(s, &self.right_kernel_matrix(a)?, rho)
    }

    /// Largest `|eigenvalue|` of `√w χ^L(a) √w`, equal to `‖a‖` for
    /// self-adjoint `a`.
    pub fn operator_norm_via_kernel(&self, a: &Operator) -> Result<f64> {
        hermitian_check(a)?;
        let k = self.left_kernel_matrix(a)?;
        let sw: Vec<f64> = self.points.weights().iter().map(|w| w.sqrt()).collect();
        let mut weighted = DMatrix::from_fn(self.len(), self.len(), |i, j| k[(i, j)] * (sw[i] * sw[j]));
        weighted = (&weighted + weighted.adjoint()) * C64::new(0.5, 0.0);
        let eig = weighted.symmetric_eigenvalues();
        Ok(eig.iter().map(|e| e.abs()).fold(0.0, f64::max))
    }

    /// `max ‖Φ‖⁻² |⟨Φ, χ^L(a) Φ⟩|` over the images `Φ = D_T(|ψ⟩⟨ψ|)` of
    /// `samples` random pure states. A lower bound for `‖a‖`.
    pub fn norm_lower_bound_sweep(&self, a: &Operator, samples: usize, seed: u64) -> Result<f64> {
        let k = self.left_kernel_matrix(a)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best = 0.0f64;
        for _ in 0..samples {
            let psi = sample::unit_vector(&mut rng, self.dim());
            let phi = self.dequantize(&fiducial_projector(&psi))?;
            let kphi = self.apply_kernel(&k, &phi)?;
            let ratio = phi.inner(&kphi)?.norm() / (phi.norm() * phi.norm());
            best = best.max(ratio);
        }
        Ok(best)
    }

    fn check_pair(a1: &Operator, a2: &Operator) -> Result<()> {
        hermitian_check(a1)?;
        hermitian_check(a2)
    }

    /// `½ ∫ (χ^L(a₁) χ^L(a₂) + χ^L(a₂) χ^L(a₁))`.
    pub fn jordan_kernel(&self, a1: &Operator, a2: &Operator) -> Result<DMatrix<C64>> {
        Self::check_pair(a1, a2)?;
        let k1 = self.left_kernel_matrix(a1)?;
        let k2 = self.left_kernel_matrix(a2)?;
        Ok((self.compose_kernels(&k1, &k2) + self.compose_kernels(&k2, &k1)) * C64::new(0.5, 0.0))
    }

    /// `(1/i) ∫ (χ^L(a₁) χ^L(a₂) − χ^L(a₂) χ^L(a₁))`.
    pub fn lie_kernel(&self, a1: &Operator, a2: &Operator) -> Result<DMatrix<C64>> {
        Self::check_pair(a1, a2)?;
        let k1 = self.left_kernel_matrix(a1)?;
        let k2 = self.left_kernel_matrix(a2)?;
        Ok((self.compose_kernels(&k1, &k2) - self.compose_kernels(&k2, &k1)) * C64::new(0.0, -1.0))
    }

    fn require_selfadjoint_analyzer(&self) -> Result<()> {
        let defect = self.analyzer.hermitian_defect();
        if defect > HERMITIAN_TOL {
            return Err(HsFrameError::NotSelfAdjoint { defect });
        }
        Ok(())
    }

    /// For self-adjoint `T`: whether `Φ ∈ Ran(D_T)` and `Φ = Φ^◇`, i.e. `Φ` is
    /// the image of a self-adjoint operator.
    pub fn is_selfadjoint_image(&self, phi: &BiPhaseFunction, tol: f64) -> Result<bool> {
        self.require_selfadjoint_analyzer()?;
        let scale = phi.norm().max(1.0);
        let in_range = self.project(phi)?.distance(phi)? <= tol * scale;
        let symmetric = phi.involution().distance(phi)? <= tol * scale;
        Ok(in_range && symmetric)
    }

    /// For self-adjoint `T`, whether the projection of `Φ` onto `Ran(D_T)`
    /// is the image of a pure state: `Φ = Φ^◇`, `Φ ⋆ Φ = Φ` and unit trace
    /// by the γ-sum with fiducial `s`.
    pub fn pure_state_test(&self, s: &Operator, phi: &BiPhaseFunction, tol: f64) -> Result<bool> {
        self.require_selfadjoint_analyzer()?;
        let p = self.project(phi)?;
        let symmetric = p.involution().distance(&p)? <= tol;
        let idempotent = self.star_product(&p, &p, StarPath::Operator)?.distance(&p)? <= tol;
        let unit_trace = (self.trace_triple(s, &p)? - 1.0).norm() <= tol;
        Ok(symmetric && idempotent && unit_trace)
    }

    /// `M(g; g₁, g₂) = m(g⁻¹, g₁) m(g⁻¹, g₂)*`.
    pub fn m_function(&self, g: usize, g1: usize, g2: usize) -> C64 {
        let gi = self.rep.group().inv(g);
        let m = self.rep.multiplier();
        m.value(gi, g1) * m.value(gi, g2).conj()
    }

    /// `(L_M(g) f)(g₁, g₂) = M(g; g₁, g₂) f(g⁻¹g₁, g⁻¹g₂)`.
    pub fn lm_action(&self, g: usize, f: &BiPhaseFunction) -> Result<BiPhaseFunction> {
        self.check_function(f)?;
        let grp = self.rep.group();
        let gi = grp.inv(g);
        Ok(self.function_from_fn(|g1, g2| self.m_function(g, g1, g2) * f.at(grp.mul(gi, g1), grp.mul(gi, g2))))
    }

    /// `max |M(gg′; g₁, g₂) − M(g; g₁, g₂) M(g′; g⁻¹g₁, g⁻¹g₂)|` over all
    /// quadruples.
    pub fn m_cocycle_residual(&self) -> f64 {
        let grp = self.rep.group();
        let n = self.order();
        let mut worst = 0.0f64;
        for g in 0..n {
            let gi = grp.inv(g);
            for gp in 0..n {
                let ggp = grp.mul(g, gp);
                for g1 in 0..n {
                    for g2 in 0..n {
                        let lhs = self.m_function(ggp, g1, g2);
                        let rhs = self.m_function(g, g1, g2) * self.m_function(gp, grp.mul(gi, g1), grp.mul(gi, g2));
                        worst = worst.max((lhs - rhs).norm());
                    }
                }
            }
        }
        worst
    }

    /// `max_g ‖D_T(U(g) a U(g)†) − L_M(g) D_T a‖` over `samples` random `a`.
    pub fn intertwining_lm_residual(&self, samples: usize, seed: u64) -> Result<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst = 0.0f64;
        for _ in 0..samples {
            let a = sample::gaussian_operator(&mut rng, self.dim());
            let da = self.dequantize(&a)?;
            for (g, u) in self.rep.matrices().iter().enumerate() {
                let lhs = self.dequantize(&(u * &a * u.adjoint()))?;
                let rhs = self.lm_action(g, &da)?;
                worst = worst.max(lhs.distance(&rhs)?);
            }
        }
        Ok(worst)
    }
}
