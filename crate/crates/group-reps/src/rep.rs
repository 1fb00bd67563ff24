use std::sync::Arc;

use frame_engine::{FrameError, PhaseFunction, VectorFrame};
use nalgebra::DMatrix;
use operator_space::{sample, Operator, Vector, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{FiniteGroupTable, GroupError, Multiplier, Result};

/// Per-entry tolerance for `U(e) = I`, unitarity and the projective relation
/// at construction, scaled by the dimension.
const VALIDATION_TOL: f64 = 1e-12;

/// Default test set for [`ProjectiveRep::orthogonality_residual`].
const ORTHOGONALITY_SAMPLES: usize = 12;
const ORTHOGONALITY_SEED: u64 = 0x5eed_0f0f;

/// Residuals above this mark a representation as failing the orthogonality
/// relations.
const SQUARE_INTEGRABLE_TOL: f64 = 1e-8;

/// Relative singular-value threshold for the commutant null space.
const COMMUTANT_TOL: f64 = 1e-9;

/// A projective unitary representation `U(gh) = m(g, h) U(g) U(h)` of a finite group.
///
/// The scalar `d_U` is fixed by `Σ_g μ(g) U(g) X U(g)† = d_U² tr(X) I`, which
/// holds for irreducible representations; taking traces gives
/// `d_U² = μ(G) / dim`.
#[derive(Clone, Debug)]
pub struct ProjectiveRep {
    group: FiniteGroupTable,
    matrices: Vec<Operator>,
    multiplier: Multiplier,
    duflo: f64,
}

/// Outcome of the orthogonality check on a fixed random test set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrthogonalityReport {
    /// `max |Σ_g μ(g)⟨φ₁,U(g)ψ₁⟩⟨U(g)ψ₂,φ₂⟩ − d_U²⟨φ₁,φ₂⟩⟨ψ₂,ψ₁⟩|` over unit vectors.
    pub residual: f64,
    /// Mean of `(Σ_g μ(g)|⟨φ,U(g)ψ⟩|²)^{1/2}` over unit pairs.
    pub duflo_estimate: f64,
    /// Largest deviation of a single-pair estimate from the mean.
    pub duflo_spread: f64,
}

impl OrthogonalityReport {
    /// Whether the relations hold, i.e. the representation behaves as square
    /// integrable and irreducible on the test set.
    pub fn holds(&self) -> bool {
        self.residual < SQUARE_INTEGRABLE_TOL
    }
}

impl ProjectiveRep {
    /// Validates the matrices against the group and multiplier.
    pub fn new(group: FiniteGroupTable, matrices: Vec<Operator>, multiplier: Multiplier) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(GroupError::WrongMatrixCount { expected: group.order(), found: matrices.len() });
        }
        if multiplier.order() != group.order() {
            return Err(GroupError::InvalidMultiplier("multiplier order differs from group order".into()));
        }
        let n = matrices[0].dim();
        if let Some(u) = matrices.iter().find(|u| u.dim() != n) {
            return Err(GroupError::DimensionMismatch { expected: n, found: u.dim() });
        }
        let tol = VALIDATION_TOL * n as f64;

        let defect = matrices[group.identity()].max_abs_diff(&Operator::identity(n));
        if defect > tol {
            return Err(GroupError::IdentityNotTrivial { defect });
        }
        for (element, u) in matrices.iter().enumerate() {
            let defect = u.unitarity_defect();
            if defect > tol {
                return Err(GroupError::NotUnitary { element, defect });
            }
        }
        let duflo = (group.points().total_weight() / n as f64).sqrt();
        let rep = Self { group, matrices, multiplier, duflo };
        if let Some((g, h, residual)) = rep.worst_projective_pair() {
            if residual > tol {
                return Err(GroupError::ProjectiveRelation { g, h, residual });
            }
        }
        Ok(rep)
    }

    pub fn group(&self) -> &FiniteGroupTable {
        &self.group
    }

    pub fn multiplier(&self) -> &Multiplier {
        &self.multiplier
    }

    pub fn matrices(&self) -> &[Operator] {
        &self.matrices
    }

    pub fn matrix(&self, g: usize) -> &Operator {
        &self.matrices[g]
    }

    /// Dimension of the carrier space.
    pub fn dim(&self) -> usize {
        self.matrices[0].dim()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `d_U`, with `D_U = d_U · I`.
    pub fn duflo_constant(&self) -> f64 {
        self.duflo
    }

    /// Same matrices with Haar weights scaled by `c`; `d_U` scales by `√c`.
    pub fn with_rescaled_haar(&self, c: f64) -> Result<Self> {
        let group = self.group.rescaled(c)?;
        let duflo = (group.points().total_weight() / self.dim() as f64).sqrt();
        Ok(Self { group, duflo, ..self.clone() })
    }

    /// `max_{g,h} max|U(gh) − m(g,h) U(g) U(h)|`.
    pub fn projective_residual(&self) -> f64 {
        self.worst_projective_pair().map_or(0.0, |(_, _, r)| r)
    }

    fn worst_projective_pair(&self) -> Option<(usize, usize, f64)> {
        let n = self.order();
        let mut worst: Option<(usize, usize, f64)> = None;
        for g in 0..n {
            for h in 0..n {
                let prod = (&self.matrices[g] * &self.matrices[h]) * self.multiplier.value(g, h);
                let r = self.matrices[self.group.mul(g, h)].max_abs_diff(&prod);
                if worst.map_or(true, |(_, _, w)| r > w) {
                    worst = Some((g, h, r));
                }
            }
        }
        worst
    }

    /// Dimension of the commutant `{A : [A, U(g)] = 0 ∀g}`, found as the null
    /// space of the stacked linear maps `A ↦ AU(g) − U(g)A`.
    pub fn commutant_dimension(&self) -> usize {
        let n = self.dim();
        let id = DMatrix::<C64>::identity(n, n);
        let mut stacked = DMatrix::<C64>::zeros(self.order() * n * n, n * n);
        for (k, u) in self.matrices.iter().enumerate() {
            let block = u.matrix().transpose().kronecker(&id) - id.kronecker(u.matrix());
            stacked.view_mut((k * n * n, 0), (n * n, n * n)).copy_from(&block);
        }
        let sv = stacked.singular_values();
        let max = sv.iter().cloned().fold(0.0, f64::max);
        n * n - sv.iter().filter(|&&s| s > COMMUTANT_TOL * max).count()
    }

    /// Irreducibility certificate: the commutant consists of scalars only.
    pub fn is_irreducible(&self) -> bool {
        self.commutant_dimension() == 1
    }

    /// `U ⊕ V` on `H_U ⊕ H_V`; both must share group and multiplier.
    pub fn direct_sum(&self, other: &ProjectiveRep) -> Result<ProjectiveRep> {
        if self.group != other.group || self.multiplier != other.multiplier {
            return Err(GroupError::GroupMismatch);
        }
        let (a, b) = (self.dim(), other.dim());
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(u, v)| {
                let mut m = DMatrix::<C64>::zeros(a + b, a + b);
                m.view_mut((0, 0), (a, a)).copy_from(u.matrix());
                m.view_mut((a, a), (b, b)).copy_from(v.matrix());
                Operator::from_matrix(m)
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        ProjectiveRep::new(self.group.clone(), matrices, self.multiplier.clone())
    }

    fn check_vector(&self, v: &Vector) -> Result<()> {
        if v.len() != self.dim() {
            return Err(GroupError::DimensionMismatch { expected: self.dim(), found: v.len() });
        }
        Ok(())
    }

    fn check_operator(&self, a: &Operator) -> Result<()> {
        if a.dim() != self.dim() {
            return Err(GroupError::DimensionMismatch { expected: self.dim(), found: a.dim() });
        }
        Ok(())
    }

    fn check_function(&self, f: &PhaseFunction) -> Result<()> {
        if Arc::ptr_eq(f.points(), self.group.points()) || **f.points() == **self.group.points() {
            Ok(())
        } else {
            Err(FrameError::PointSetMismatch.into())
        }
    }

    /// The orbit `{U(g)ψ}`.
    pub fn orbit(&self, psi: &Vector) -> Result<Vec<Vector>> {
        self.check_vector(psi)?;
        Ok(self.matrices.iter().map(|u| u.apply(psi)).collect())
    }

    /// Coefficient `c(g) = ⟨U(g)ψ, φ⟩`.
    pub fn coefficient(&self, psi: &Vector, phi: &Vector) -> Result<PhaseFunction> {
        self.check_vector(phi)?;
        let orbit = self.orbit(psi)?;
        Ok(PhaseFunction::new(self.group.points().clone(), orbit.iter().map(|v| v.dotc(phi)).collect())?)
    }

    /// Orthogonality check on the default fixed test set.
    pub fn orthogonality_residual(&self) -> OrthogonalityReport {
        self.orthogonality_residual_with(ORTHOGONALITY_SAMPLES, ORTHOGONALITY_SEED)
    }

    /// Orthogonality check on `samples` random unit quadruples drawn from `seed`.
    pub fn orthogonality_residual_with(&self, samples: usize, seed: u64) -> OrthogonalityReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.dim();
        let w = self.group.haar_weights();
        let d2 = self.duflo * self.duflo;
        let mut residual = 0.0f64;
        let mut estimates = Vec::with_capacity(samples);
        for _ in 0..samples {
            let [phi1, psi1, phi2, psi2] = std::array::from_fn(|_| sample::unit_vector(&mut rng, n));
            let mut lhs = C64::new(0.0, 0.0);
            let mut diag = 0.0;
            for (u, &mu) in self.matrices.iter().zip(w) {
                let a = phi1.dotc(&u.apply(&psi1));
                let b = u.apply(&psi2).dotc(&phi2);
                lhs += a * b * mu;
                diag += a.norm_sqr() * mu;
            }
            let rhs = phi1.dotc(&phi2) * psi2.dotc(&psi1) * d2;
            residual = residual.max((lhs - rhs).norm());
            estimates.push(diag.sqrt());
        }
        let duflo_estimate = estimates.iter().sum::<f64>() / samples.max(1) as f64;
        let duflo_spread = estimates.iter().fold(0.0f64, |m, e| m.max((e - duflo_estimate).abs()));
        OrthogonalityReport { residual, duflo_estimate, duflo_spread }
    }

    /// Wavelet transform generated by the fiducial `ψ ≠ 0`.
    pub fn wavelet_transform(&self, psi: &Vector) -> Result<WaveletTransform<'_>> {
        self.check_vector(psi)?;
        let norm = self.duflo * psi.norm();
        if norm == 0.0 {
            return Err(GroupError::ZeroFiducial);
        }
        let orbit = self.matrices.iter().map(|u| u.apply(psi) / C64::new(norm, 0.0)).collect();
        Ok(WaveletTransform { rep: self, fiducial: psi.clone(), fiducial_norm: norm, orbit })
    }

    /// Left-regular `m`-representation:
    /// `(R_m(g)f)(g′) = m(g,g⁻¹)* m(g⁻¹,g′) f(g⁻¹g′)`.
    pub fn left_regular(&self, g: usize, f: &PhaseFunction) -> Result<PhaseFunction> {
        self.check_function(f)?;
        let gi = self.group.inv(g);
        let head = self.multiplier.value(g, gi).conj();
        Ok(PhaseFunction::from_fn(f.points().clone(), |gp| {
            head * self.multiplier.value(gi, gp) * f.value(self.group.mul(gi, gp))
        }))
    }

    /// `κ_ψ(a; g, g′) = ‖D_Uψ‖⁻² ⟨U(g)ψ, a U(g′)ψ⟩`.
    pub fn rep_kernel(&self, psi: &Vector, a: &Operator, g: usize, gp: usize) -> Result<C64> {
        self.check_operator(a)?;
        let w = self.wavelet_transform(psi)?;
        Ok(w.orbit[g].dotc(&a.apply(&w.orbit[gp])))
    }

    /// The full matrix `[κ_ψ(a; g, g′)]`.
    pub fn rep_kernel_matrix(&self, psi: &Vector, a: &Operator) -> Result<DMatrix<C64>> {
        self.check_operator(a)?;
        let w = self.wavelet_transform(psi)?;
        let e = w.orbit_matrix();
        Ok(e.adjoint() * a.matrix() * &e)
    }

    /// Weak-integral reconstruction
    /// `Σ_{g,g′} μ(g)μ(g′) κ(g, g′) |η_g⟩⟨η_{g′}|` with `η_g = ‖D_Uψ‖⁻¹U(g)ψ`,
    /// which returns `a` when `κ = κ_ψ(a; ·, ·)`.
    pub fn weak_integral_reconstruct(&self, psi: &Vector, kernel: &DMatrix<C64>) -> Result<Operator> {
        let n = self.order();
        if kernel.shape() != (n, n) {
            return Err(GroupError::DimensionMismatch { expected: n, found: kernel.nrows() });
        }
        let w = self.wavelet_transform(psi)?;
        let mu = self.group.haar_weights();
        let weighted = DMatrix::from_fn(n, n, |g, gp| kernel[(g, gp)] * (mu[g] * mu[gp]));
        let e = w.orbit_matrix();
        Ok(Operator::from_matrix(&e * weighted * e.adjoint())?)
    }

    /// `|Σ_g μ(g)⟨U(g)ψ, aU(g)φ⟩ − tr(a)⟨D_Uψ, D_Uφ⟩|`.
    pub fn first_trace_formula_residual(&self, psi: &Vector, phi: &Vector, a: &Operator) -> Result<f64> {
        self.check_vector(psi)?;
        self.check_vector(phi)?;
        self.check_operator(a)?;
        let lhs: C64 = self
            .matrices
            .iter()
            .zip(self.group.haar_weights())
            .map(|(u, &mu)| u.apply(psi).dotc(&a.apply(&u.apply(phi))) * mu)
            .sum();
        let rhs = a.trace() * psi.dotc(phi) * (self.duflo * self.duflo);
        Ok((lhs - rhs).norm())
    }

    /// `|d_U⁻² Σ_g μ(g) tr(U(g) t U(g)† a) − tr(a) tr(t)|`.
    pub fn second_trace_formula_residual(&self, a: &Operator, t: &Operator) -> Result<f64> {
        self.check_operator(a)?;
        self.check_operator(t)?;
        let lhs: C64 = self
            .matrices
            .iter()
            .zip(self.group.haar_weights())
            .map(|(u, &mu)| (u * t * u.adjoint() * a).trace() * mu)
            .sum::<C64>()
            / (self.duflo * self.duflo);
        Ok((lhs - a.trace() * t.trace()).norm())
    }
}

/// The isometry `W_ψ φ = ‖D_Uψ‖⁻¹ ⟨U(·)ψ, φ⟩` from `H` into `L²(G)`.
#[derive(Clone, Debug)]
pub struct WaveletTransform<'a> {
    rep: &'a ProjectiveRep,
    fiducial: Vector,
    fiducial_norm: f64,
    orbit: Vec<Vector>,
}

impl<'a> WaveletTransform<'a> {
    pub fn rep(&self) -> &'a ProjectiveRep {
        self.rep
    }

    pub fn fiducial(&self) -> &Vector {
        &self.fiducial
    }

    /// `‖D_Uψ‖ = d_U ‖ψ‖`.
    pub fn fiducial_norm(&self) -> f64 {
        self.fiducial_norm
    }

    /// Normalized orbit vectors `η_g = ‖D_Uψ‖⁻¹ U(g)ψ`.
    pub fn orbit(&self) -> &[Vector] {
        &self.orbit
    }

    fn orbit_matrix(&self) -> DMatrix<C64> {
        DMatrix::from_columns(&self.orbit)
    }

    pub fn transform(&self, phi: &Vector) -> Result<PhaseFunction> {
        self.rep.check_vector(phi)?;
        Ok(PhaseFunction::new(self.rep.group.points().clone(), self.orbit.iter().map(|v| v.dotc(phi)).collect())?)
    }

    /// `W_ψ* f = Σ_g μ(g) f(g) η_g`.
    pub fn adjoint(&self, f: &PhaseFunction) -> Result<Vector> {
        self.rep.check_function(f)?;
        let mut out = Vector::zeros(self.rep.dim());
        for ((v, &mu), &c) in self.orbit.iter().zip(self.rep.group.haar_weights()).zip(f.values()) {
            out.axpy(c * mu, v, C64::new(1.0, 0.0));
        }
        Ok(out)
    }

    /// The orbit `{η_g}` as a frame over the group; tight with bound 1 for
    /// irreducible representations.
    pub fn frame(&self) -> Result<VectorFrame> {
        Ok(VectorFrame::new(self.rep.group.points().clone(), self.orbit.clone())?)
    }

    /// Reproducing kernel `κ_ψ(g, g′) = ⟨η_g, η_{g′}⟩` of `Ran(W_ψ)`.
    pub fn reproducing_kernel(&self, g: usize, gp: usize) -> C64 {
        self.orbit[g].dotc(&self.orbit[gp])
    }

    /// Projection onto `Ran(W_ψ)`: `f ↦ W_ψ W_ψ* f`.
    pub fn project_onto_range(&self, f: &PhaseFunction) -> Result<PhaseFunction> {
        let v = self.adjoint(f)?;
        self.transform(&v)
    }
}
