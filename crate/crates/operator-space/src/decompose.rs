use nalgebra::{DMatrix, SymmetricEigen, SVD};

use crate::{outer, tol, Operator, OperatorError, Result, Vector, C64};

/// Canonical (singular value) decomposition `a = Σ τ_n |φ_n⟩⟨ψ_n|`.
#[derive(Clone, Debug)]
pub struct CanonicalDecomposition {
    /// Strictly positive, in descending order.
    pub singular_values: Vec<f64>,
    /// The vectors `φ_n`.
    pub left_vectors: Vec<Vector>,
    /// The vectors `ψ_n`.
    pub right_vectors: Vec<Vector>,
    dim: usize,
}

impl CanonicalDecomposition {
    pub fn rank(&self) -> usize {
        self.singular_values.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Rebuilds `Σ τ_n |φ_n⟩⟨ψ_n|`.
    pub fn reconstruct(&self) -> Operator {
        let mut acc = Operator::zeros(self.dim);
        for ((&t, phi), psi) in self.singular_values.iter().zip(&self.left_vectors).zip(&self.right_vectors) {
            acc += &(outer(phi, psi) * t);
        }
        acc
    }
}

/// Singular value decomposition with numerically zero terms dropped.
///
/// A singular value is kept when it exceeds [`tol::RANK`] times the largest
/// one, so the zero matrix yields an empty decomposition.
pub fn canonical_decompose(a: &Operator) -> CanonicalDecomposition {
    let n = a.dim();
    let svd = SVD::new(a.matrix().clone(), true, true);
    let u = svd.u.expect("left singular vectors requested");
    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let top = order.first().map(|&i| svd.singular_values[i]).unwrap_or(0.0);

    let mut out = CanonicalDecomposition {
        singular_values: Vec::new(),
        left_vectors: Vec::new(),
        right_vectors: Vec::new(),
        dim: n,
    };
    if top == 0.0 {
        return out;
    }
    for i in order {
        let s = svd.singular_values[i];
        if s <= tol::RANK * top {
            continue;
        }
        out.singular_values.push(s);
        out.left_vectors.push(u.column(i).into_owned());
        // Row i of V† is ⟨ψ_i|, so ψ_i is its conjugate transpose.
        out.right_vectors.push(v_t.row(i).adjoint());
    }
    out
}

/// Eigen-decomposition of the Hermitian part of `a`: ascending eigenvalues and
/// the matching orthonormal eigenvectors as columns.
pub fn hermitian_eigen(a: &Operator) -> (Vec<f64>, DMatrix<C64>) {
    let h = (a.matrix() + a.matrix().adjoint()) * C64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = DMatrix::from_fn(a.dim(), a.dim(), |r, c| eig.eigenvectors[(r, order[c])]);
    (vals, vecs)
}

/// Positive square root of a positive semidefinite operator.
///
/// Eigenvalues in `[−tol·max(1, ‖a‖), 0)` are clamped to zero.
pub fn positive_sqrt(a: &Operator) -> Result<Operator> {
    positive_sqrt_with_tol(a, tol::EXACT)
}

/// [`positive_sqrt`] with an explicit tolerance.
pub fn positive_sqrt_with_tol(a: &Operator, tol: f64) -> Result<Operator> {
    let scale = a.hs_norm().max(1.0);
    let defect = a.hermitian_defect();
    let (vals, vecs) = hermitian_eigen(a);
    let min = vals.first().copied().unwrap_or(0.0);
    if defect > tol * scale || min < -tol * scale {
        return Err(OperatorError::NotPositive { min_eigenvalue: min, hermitian_defect: defect });
    }
    let roots: Vec<C64> = vals.iter().map(|&l| C64::new(l.max(0.0).sqrt(), 0.0)).collect();
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(roots));
    Operator::from_matrix(&vecs * d * vecs.adjoint())
}

/// Matrix exponential by Padé approximation with scaling and squaring.
pub fn matrix_exp(a: &Operator) -> Operator {
    Operator::from_matrix(a.matrix().exp()).expect("exponential of a square matrix is square")
}
