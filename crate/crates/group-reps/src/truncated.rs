use std::collections::BTreeMap;
use std::f64::consts::SQRT_2;

use frame_engine::VectorFrame;
use nalgebra::{DMatrix, SymmetricEigen};
use operator_space::{matrix_exp, Operator, Vector, C64};

use crate::{Grid, GroupError, Result};

/// Annihilation operator `a|n⟩ = √n |n−1⟩` on `span{|0⟩, …, |n_fock−1⟩}`.
pub fn fock_annihilation(n_fock: usize) -> Operator {
    Operator::from_fn(n_fock, |i, j| if j == i + 1 { C64::new((j as f64).sqrt(), 0.0) } else { C64::new(0.0, 0.0) })
}

/// Truncated position `q̂ = (a + a†)/√2`.
pub fn position_operator(n_fock: usize) -> Operator {
    let a = fock_annihilation(n_fock);
    (&a + &a.adjoint()) * (1.0 / SQRT_2)
}

/// Truncated momentum `p̂ = (a − a†)/(i√2)`.
pub fn momentum_operator(n_fock: usize) -> Operator {
    let a = fock_annihilation(n_fock);
    (&a - &a.adjoint()) * C64::new(0.0, -1.0 / SQRT_2)
}

/// The Weyl system `U(q, p) = exp(i(p q̂ − q p̂))` on a truncated Fock space,
/// sampled on a phase-space [`Grid`] with Haar weight `h²/(2π)`.
///
/// The exponential of the truncated generator is evaluated through one
/// diagonalization `q̂ = V diag(λ) Vᵀ`: with `r cos θ = p`, `r sin θ = −q`,
/// the generator is `r R_θ q̂ R_θ†` for `R_θ = e^{iθn̂}`, so
/// `U = R_θ V diag(e^{irλ}) Vᵀ R_θ†`. This agrees with
/// [`displacement_expm`](Self::displacement_expm) to roundoff.
///
/// In these units `U(q, p)|0⟩` is the coherent state with
/// `α = (q + ip)/√2`, so `|⟨0|U(q, p)|0⟩|² = e^{−(q² + p²)/2}`.
#[derive(Clone, Debug)]
pub struct TruncatedWeylSystem {
    n_fock: usize,
    grid: Grid,
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
}

impl TruncatedWeylSystem {
    pub fn new(n_fock: usize, grid: Grid) -> Result<Self> {
        if n_fock < 2 {
            return Err(GroupError::FockTooSmall(n_fock));
        }
        let q = DMatrix::<f64>::from_fn(n_fock, n_fock, |i, j| {
            if j == i + 1 {
                (j as f64 / 2.0).sqrt()
            } else if i == j + 1 {
                (i as f64 / 2.0).sqrt()
            } else {
                0.0
            }
        });
        let eig = SymmetricEigen::new(q);
        Ok(Self { n_fock, grid, eigenvalues: eig.eigenvalues.iter().copied().collect(), eigenvectors: eig.eigenvectors })
    }

    pub fn n_fock(&self) -> usize {
        self.n_fock
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Number of grid points.
    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// The Hermitian generator `p q̂ − q p̂`.
    pub fn generator(&self, q: f64, p: f64) -> Operator {
        position_operator(self.n_fock) * p - momentum_operator(self.n_fock) * q
    }

    /// `U(q, p)` by the spectral formula.
    pub fn displacement(&self, q: f64, p: f64) -> Operator {
        Operator::from_matrix(self.displacement_columns(q, p, self.n_fock)).expect("square by construction")
    }

    /// `U(q, p)` by a dense matrix exponential of `i(p q̂ − q p̂)`.
    pub fn displacement_expm(&self, q: f64, p: f64) -> Operator {
        matrix_exp(&(self.generator(q, p) * C64::new(0.0, 1.0)))
    }

    /// `U` at grid point `k`.
    pub fn displacement_at(&self, k: usize) -> Operator {
        let (q, p) = self.grid.point(k);
        self.displacement(q, p)
    }

    /// The first `cols` columns `U(q, p)|0⟩, …, U(q, p)|cols−1⟩`.
    pub fn displacement_columns(&self, q: f64, p: f64, cols: usize) -> DMatrix<C64> {
        let r = q.hypot(p);
        let m = self.radial_columns(r, cols);
        self.rotate_columns(&m, (-q).atan2(p))
    }

    /// `V diag(e^{irλ}) Vᵀ`, first `cols` columns.
    fn radial_columns(&self, r: f64, cols: usize) -> DMatrix<C64> {
        let n = self.n_fock;
        let v = &self.eigenvectors;
        let phases: Vec<C64> = self.eigenvalues.iter().map(|&l| C64::from_polar(1.0, r * l)).collect();
        let mut out = DMatrix::<C64>::zeros(n, cols);
        for c in 0..cols {
            for l in 0..n {
                let f = phases[l] * v[(c, l)];
                for j in 0..n {
                    out[(j, c)] += f * v[(j, l)];
                }
            }
        }
        out
    }

    /// `R_θ M R_θ†` restricted to the columns of `m`.
    fn rotate_columns(&self, m: &DMatrix<C64>, theta: f64) -> DMatrix<C64> {
        let n = self.n_fock;
        let rot: Vec<C64> = (0..n).map(|k| C64::from_polar(1.0, theta * k as f64)).collect();
        DMatrix::from_fn(n, m.ncols(), |j, c| rot[j] * rot[c].conj() * m[(j, c)])
    }

    /// Calls `f(k, U(z_k)[:, ..cols])` for every grid point, sharing the radial
    /// factor among points at equal distance from the origin.
    pub fn for_each_columns(&self, cols: usize, mut f: impl FnMut(usize, &DMatrix<C64>)) {
        let n = self.grid.side();
        let c = self.grid.half_count() as i64;
        let mut shells: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for k in 0..self.grid.len() {
            let (i, j) = ((k / n) as i64 - c, (k % n) as i64 - c);
            shells.entry(i * i + j * j).or_default().push(k);
        }
        for (r2, members) in shells {
            let m = self.radial_columns(self.grid.spacing() * (r2 as f64).sqrt(), cols);
            for k in members {
                let (q, p) = self.grid.point(k);
                f(k, &self.rotate_columns(&m, (-q).atan2(p)));
            }
        }
    }

    /// The coherent state `U(q, p)|0⟩`.
    pub fn coherent_state(&self, q: f64, p: f64) -> Vector {
        self.displacement_columns(q, p, 1).column(0).into_owned()
    }

    /// `Σ_z (h²/2π) |⟨U(z)ψ, ψ⟩|²`, which tends to `‖ψ‖⁴` with `d_U = 1`.
    pub fn orthogonality_sum(&self, psi: &Vector) -> Result<f64> {
        self.check_vector(psi)?;
        let w = self.grid.cell_weight();
        let mut sum = 0.0;
        self.for_each_full(|_, u| sum += w * u.apply(psi).dotc(psi).norm_sqr());
        Ok(sum)
    }

    fn for_each_full(&self, mut f: impl FnMut(usize, &Operator)) {
        self.for_each_columns(self.n_fock, |k, m| f(k, &Operator::from_matrix(m.clone()).expect("square")));
    }

    /// All grid displacements, in flat grid order.
    pub fn displacements(&self) -> Vec<Operator> {
        let mut out = vec![None; self.grid.len()];
        self.for_each_full(|k, u| out[k] = Some(u.clone()));
        out.into_iter().map(|u| u.expect("every grid point visited")).collect()
    }

    /// The orbit `{U(z)ψ}` as a frame over the grid.
    pub fn orbit_frame(&self, psi: &Vector) -> Result<VectorFrame> {
        self.check_vector(psi)?;
        let mut vectors = vec![Vector::zeros(self.n_fock); self.grid.len()];
        self.for_each_full(|k, u| vectors[k] = u.apply(psi));
        Ok(VectorFrame::new(self.grid.points(), vectors)?)
    }

    /// Radius `|z|` up to which the truncation keeps the headroom
    /// `n_fock ≥ |z|² + 6√n_fock`.
    pub fn reliable_radius(&self) -> f64 {
        let n = self.n_fock as f64;
        (n - 6.0 * n.sqrt()).max(0.0).sqrt()
    }

    /// A warning when grid points lie beyond [`reliable_radius`](Self::reliable_radius).
    pub fn truncation_warning(&self) -> Option<String> {
        let corner = self.grid.half_extent() * SQRT_2;
        let reliable = self.reliable_radius();
        (corner > reliable).then(|| {
            format!(
                "grid reaches |z| = {corner:.3} but n_fock = {} only supports |z| <= {reliable:.3}; \
                 displacements near the grid edge are distorted by truncation",
                self.n_fock
            )
        })
    }

    fn check_vector(&self, v: &Vector) -> Result<()> {
        if v.len() != self.n_fock {
            return Err(GroupError::DimensionMismatch { expected: self.n_fock, found: v.len() });
        }
        Ok(())
    }
}
