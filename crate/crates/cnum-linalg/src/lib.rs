//! Dense complex linear algebra for small non-Hermitian matrices.
//!
//! The centerpiece is [`eig_general`], a complex Schur (Hessenberg + shifted
//! QR) eigensolver that returns *both* right and left eigenvectors, where the
//! left eigenvector of an eigenvalue is the eigenvector of the transposed
//! matrix (not the adjoint). With that convention the bilinear c-product
//! pairs left and right vectors biorthogonally for any complex matrix, and
//! left equals right for complex-symmetric ones.
//!
//! Defective and near-defective matrices are first-class inputs: the solver
//! always returns `n` eigenpairs, and [`biorthonormalize`] flags pairs whose
//! c-norm has collapsed instead of failing.

mod eig;
mod matrix;
mod products;
mod solve;

pub use eig::{biorthonormalize, eig_general, EigenPair, EigenSystem};
pub use matrix::{CMatrix, CVector};
pub use products::{c_product, h_product};
pub use solve::{solve_linear, solve_linear_multi};

pub use num_complex::Complex64 as C64;

/// Default tolerances; every one of them can be overridden per call
/// (or through the CLI configuration).
pub mod defaults {
    /// Relative eigenpair residual bound, `‖M·v − λv‖ ≤ TOL_EIG·‖M‖_F`.
    pub const TOL_EIG: f64 = 1e-10;
    /// Bound on `|c_product(left_i, right_j) − δ_ij|` after normalization.
    pub const TOL_NORM: f64 = 1e-8;
    /// Threshold on `‖M − Mᵀ‖` below which a matrix counts as complex-symmetric.
    pub const TOL_SYM: f64 = 1e-8;
    /// Relative residual bound for linear solves.
    pub const TOL_SOLVE: f64 = 1e-10;
    /// Eigenvalue gap below which biorthogonality between two pairs is not guaranteed.
    pub const GAP_MIN: f64 = 1e-8;
    /// `|c_norm| < TOL_DEFECT·h_norm` marks an eigenpair as near-defective.
    pub const TOL_DEFECT: f64 = 1e-3;
}

/// Errors produced by this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch in {context}: expected {expected}, got {actual}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrices and vectors must have at least one entry")]
    Empty,
    #[error("non-finite entry at flat index {index}")]
    NonFinite { index: usize },
    #[error("QR iteration hit the iteration cap; worst remaining residual {worst_residual:e}")]
    NonConvergence { worst_residual: f64 },
    #[error("matrix is singular at pivot {pivot_index}")]
    Singular { pivot_index: usize },
    #[error("linear solve residual {residual:e} exceeds tolerance (near-singular matrix)")]
    IllConditioned { residual: f64 },
    #[error("operation undefined for a zero vector")]
    ZeroVector,
}

pub type Result<T> = std::result::Result<T, LinalgError>;
