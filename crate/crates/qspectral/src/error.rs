//! Error type shared by all modules.

use thiserror::Error;

/// Errors reported by quaternionic linear-algebra operations.
#[derive(Debug, Error)]
pub enum Error {
    /// Inversion of the zero quaternion.
    #[error("cannot invert the zero quaternion")]
    ZeroDivision,

    /// A quaternion that should be a unit imaginary is not.
    #[error("not an imaginary unit: re = {re:.3e}, |q| = {norm:.6}")]
    InvalidImaginaryUnit { re: f64, norm: f64 },

    /// Vector or matrix shapes do not agree.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A square matrix was required.
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    /// An input vector is numerically zero.
    #[error("vector {index} is degenerate (norm {norm:.3e})")]
    DegenerateVector { index: usize, norm: f64 },

    /// Orthogonalization hit a linearly dependent vector.
    #[error("rank deficiency at vector {index}")]
    RankDeficient { index: usize },

    /// A family of vectors fails the orthonormality check.
    #[error("vectors are not orthonormal (Gram residual {residual:.3e})")]
    NotOrthonormal { residual: f64 },

    /// An operator required to be normal is not.
    #[error("operator is not normal (defect {defect:.3e})")]
    NotNormal { defect: f64 },

    /// An operator required to be self-adjoint is not.
    #[error("operator is not self-adjoint (defect {defect:.3e})")]
    NotSelfAdjoint { defect: f64 },

    /// An operator required to be anti self-adjoint and unitary is not.
    #[error("not an anti self-adjoint unitary operator: {0}")]
    InvalidComplexStructure(String),

    /// A positive operator turned out to have a negative eigenvalue.
    #[error("operator is not positive (eigenvalue {value:.3e})")]
    NotPositive { value: f64 },

    /// Operators that must commute do not, beyond tolerance.
    #[error("commutation defect {defect:.3e} exceeds tolerance {tol:.3e}")]
    CommutationDefect { defect: f64, tol: f64 },

    /// The underlying complex eigensolver did not converge.
    #[error("eigenvalue solver failed: {0}")]
    Eigensolver(String),

    /// A parameter is outside its domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The quaternionic pairing structure was violated numerically.
    #[error("numerical structure violation: {0}")]
    Internal(String),

    /// Malformed input file or JSON payload.
    #[error("malformed input: {0}")]
    Parse(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
