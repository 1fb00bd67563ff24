use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::{OperatorError, Result};

/// Complex scalar.
pub type C64 = Complex64;

/// Column vector in the ambient Hilbert space.
pub type Vector = DVector<C64>;

/// A dense complex `dim × dim` matrix.
///
/// Arithmetic operators panic on mismatched dimensions, like the underlying
/// `nalgebra` matrices; the free functions of this crate return
/// [`OperatorError::DimensionMismatch`] instead.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    m: DMatrix<C64>,
}

impl Operator {
    /// Wraps a square matrix.
    pub fn from_matrix(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(OperatorError::NotSquare { rows: m.nrows(), cols: m.ncols() });
        }
        if m.nrows() == 0 {
            return Err(OperatorError::EmptyDimension);
        }
        Ok(Self { m })
    }

    /// Builds an operator from `dim²` entries in row-major order.
    pub fn from_row_major(dim: usize, entries: &[C64]) -> Result<Self> {
        if dim == 0 {
            return Err(OperatorError::EmptyDimension);
        }
        if entries.len() != dim * dim {
            return Err(OperatorError::BadEntryCount { len: entries.len(), expected: dim * dim });
        }
        Ok(Self { m: DMatrix::from_row_slice(dim, dim, entries) })
    }

    /// Builds an operator from a function of `(row, col)`.
    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        assert!(dim > 0, "operator dimension must be positive");
        Self { m: DMatrix::from_fn(dim, dim, f) }
    }

    /// Diagonal operator with the given diagonal.
    pub fn from_diagonal(diag: &[C64]) -> Self {
        assert!(!diag.is_empty(), "operator dimension must be positive");
        Self { m: DMatrix::from_diagonal(&DVector::from_column_slice(diag)) }
    }

    /// Diagonal operator with a real diagonal.
    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diagonal(&d)
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "operator dimension must be positive");
        Self { m: DMatrix::zeros(dim, dim) }
    }

    pub fn identity(dim: usize) -> Self {
        assert!(dim > 0, "operator dimension must be positive");
        Self { m: DMatrix::identity(dim, dim) }
    }

    /// The matrix unit `|i⟩⟨j|`.
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = DMatrix::zeros(dim, dim);
        m[(i, j)] = C64::new(1.0, 0.0);
        Self { m }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn matrix_mut(&mut self) -> &mut DMatrix<C64> {
        &mut self.m
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.m[(i, j)]
    }

    /// Entries in row-major order.
    pub fn to_row_major(&self) -> Vec<C64> {
        self.m.transpose().as_slice().to_vec()
    }

    pub fn adjoint(&self) -> Self {
        Self { m: self.m.adjoint() }
    }

    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    /// `tr(self† other)`; panics if dimensions differ.
    pub fn hs_inner(&self, other: &Operator) -> C64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.m.dotc(&other.m)
    }

    pub fn hs_norm(&self) -> f64 {
        self.m.norm()
    }

    pub fn hs_norm_squared(&self) -> f64 {
        self.m.norm_squared()
    }

    /// Singular values in descending order.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self.m.clone().singular_values().iter().copied().collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    /// Largest singular value.
    pub fn op_norm(&self) -> f64 {
        self.singular_values().first().copied().unwrap_or(0.0)
    }

    /// Sum of singular values.
    pub fn trace_norm(&self) -> f64 {
        self.singular_values().iter().sum()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        assert_eq!(self.dim(), v.len(), "dimension mismatch");
        &self.m * v
    }

    pub fn scale(&self, c: C64) -> Self {
        Self { m: &self.m * c }
    }

    /// Commutator `self·other − other·self`.
    pub fn commutator(&self, other: &Operator) -> Self {
        self * other - other * self
    }

    /// Anticommutator `self·other + other·self`.
    pub fn anticommutator(&self, other: &Operator) -> Self {
        self * other + other * self
    }

    /// Largest entry of `self − self†` in modulus.
    pub fn hermitian_defect(&self) -> f64 {
        (&self.m - self.m.adjoint()).iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    /// Hermitian with all eigenvalues `≥ −tol`.
    pub fn is_positive(&self, tol: f64) -> bool {
        if !self.is_hermitian(tol) {
            return false;
        }
        let (vals, _) = crate::hermitian_eigen(self);
        vals.iter().all(|&l| l >= -tol)
    }

    /// `‖self† self − I‖_HS ≤ tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    /// `‖self† self − I‖_HS`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.dim();
        (self.m.adjoint() * &self.m - DMatrix::<C64>::identity(n, n)).norm()
    }

    /// Entrywise maximum modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.m.iter().zip(other.m.iter()).fold(0.0, |acc, (a, b)| acc.max((a - b).norm()))
    }

    /// `‖self − other‖_HS`.
    pub fn hs_distance(&self, other: &Operator) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        (&self.m - &other.m).norm()
    }
}

fn check_dims(a: &Operator, b: &Operator) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(OperatorError::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    Ok(())
}

/// Hilbert–Schmidt inner product `tr(a† b)`.
pub fn hs_inner(a: &Operator, b: &Operator) -> Result<C64> {
    check_dims(a, b)?;
    Ok(a.hs_inner(b))
}

pub fn trace(a: &Operator) -> C64 {
    a.trace()
}

pub fn adjoint(a: &Operator) -> Operator {
    a.adjoint()
}

pub fn op_norm(a: &Operator) -> f64 {
    a.op_norm()
}

pub fn trace_norm(a: &Operator) -> f64 {
    a.trace_norm()
}

pub fn hs_norm(a: &Operator) -> f64 {
    a.hs_norm()
}

/// Vector inner product `Σ conj(x_i) y_i`.
pub fn inner(x: &Vector, y: &Vector) -> Result<C64> {
    if x.len() != y.len() {
        return Err(OperatorError::DimensionMismatch { expected: x.len(), found: y.len() });
    }
    Ok(x.dotc(y))
}

/// Rank-one operator `|phi⟩⟨psi|`.
pub fn outer(phi: &Vector, psi: &Vector) -> Operator {
    assert!(!phi.is_empty(), "operator dimension must be positive");
    assert_eq!(phi.len(), psi.len(), "dimension mismatch");
    Operator { m: phi * psi.adjoint() }
}

impl Mul<&Operator> for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        Operator { m: &self.m * &rhs.m }
    }
}

impl Mul<Operator> for Operator {
    type Output = Operator;
    fn mul(self, rhs: Operator) -> Operator {
        &self * &rhs
    }
}

impl Mul<&Operator> for Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        &self * rhs
    }
}

impl Mul<Operator> for &Operator {
    type Output = Operator;
    fn mul(self, rhs: Operator) -> Operator {
        self * &rhs
    }
}

impl Mul<&Vector> for &Operator {
    type Output = Vector;
    fn mul(self, rhs: &Vector) -> Vector {
        self.apply(rhs)
    }
}

impl Mul<C64> for &Operator {
    type Output = Operator;
    fn mul(self, rhs: C64) -> Operator {
        self.scale(rhs)
    }
}

impl Mul<C64> for Operator {
    type Output = Operator;
    fn mul(mut self, rhs: C64) -> Operator {
        self.m *= rhs;
        self
    }
}

impl Mul<f64> for &Operator {
    type Output = Operator;
    fn mul(self, rhs: f64) -> Operator {
        self.scale(C64::new(rhs, 0.0))
    }
}

impl Mul<f64> for Operator {
    type Output = Operator;
    fn mul(mut self, rhs: f64) -> Operator {
        self.m *= C64::new(rhs, 0.0);
        self
    }
}

impl Add<&Operator> for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        Operator { m: &self.m + &rhs.m }
    }
}

impl Add<Operator> for Operator {
    type Output = Operator;
    fn add(self, rhs: Operator) -> Operator {
        &self + &rhs
    }
}

impl Add<&Operator> for Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        &self + rhs
    }
}

impl Sub<&Operator> for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        Operator { m: &self.m - &rhs.m }
    }
}

impl Sub<Operator> for Operator {
    type Output = Operator;
    fn sub(self, rhs: Operator) -> Operator {
        &self - &rhs
    }
}

impl Sub<&Operator> for Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        &self - rhs
    }
}

impl Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        Operator { m: -&self.m }
    }
}

impl Neg for Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        Operator { m: -self.m }
    }
}

impl AddAssign<&Operator> for Operator {
    fn add_assign(&mut self, rhs: &Operator) {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        self.m += &rhs.m;
    }
}

impl SubAssign<&Operator> for Operator {
    fn sub_assign(&mut self, rhs: &Operator) {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        self.m -= &rhs.m;
    }
}

impl From<Operator> for DMatrix<C64> {
    fn from(a: Operator) -> Self {
        a.m
    }
}

impl TryFrom<DMatrix<C64>> for Operator {
    type Error = OperatorError;
    fn try_from(m: DMatrix<C64>) -> Result<Self> {
        Operator::from_matrix(m)
    }
}
