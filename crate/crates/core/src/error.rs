//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero divisor: the zero quaternion has no inverse")]
    ZeroDivisor,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not self-adjoint (deviation {0:.3e})")]
    NotSelfAdjoint(f64),
    #[error("matrix is not positive semidefinite (minimum eigenvalue {0:.3e})")]
    NotPsd(f64),
    #[error("not a correlation matrix: {0}")]
    NotCorrelation(String),
    #[error("eigenvalues of the complex embedding do not pair (gap {0:.3e})")]
    EigenPairing(f64),
    #[error("all input vectors are zero")]
    AllZero,
    #[error("matrix is not diagonally dominant at row {0}")]
    NotDiagonallyDominant(usize),
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("solver reached the iteration limit ({0} iterations)")]
    MaxIterations(usize),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("root bracketing failed: {0}")]
    Bracket(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("leading series coefficient is zero")]
    ZeroLeadingCoefficient,
}

pub type Result<T> = std::result::Result<T, Error>;
