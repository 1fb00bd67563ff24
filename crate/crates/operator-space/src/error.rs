use thiserror::Error;

/// Errors raised by operator construction and operator-theoretic primitives.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OperatorError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("entry count {len} is not dim^2 = {expected}")]
    BadEntryCount { len: usize, expected: usize },

    #[error("operator dimension must be positive")]
    EmptyDimension,

    #[error("operator is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },

    /// Either the Hermitian defect or the most negative eigenvalue of the
    /// Hermitian part is beyond tolerance.
    #[error(
        "operator is not positive semidefinite (smallest eigenvalue {min_eigenvalue:.3e}, \
         Hermitian defect {hermitian_defect:.3e})"
    )]
    NotPositive { min_eigenvalue: f64, hermitian_defect: f64 },
}
