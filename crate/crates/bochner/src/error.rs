use thiserror::Error;

/// Errors raised across the library.
///
/// Variants carry enough context to be printed directly by the CLI.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not unitary (defect {defect:.3e})")]
    NotUnitary { defect: f64 },

    #[error("matrix is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("not a valid reduced polynomial: {0}")]
    InvalidReducedPoly(String),

    #[error("point outside the domain: {0}")]
    Domain(String),

    #[error("singular evaluation: {0}")]
    Singular(String),

    #[error("k lies outside the claimed cell: {0}")]
    InvalidCellPoint(String),

    #[error("p_C / p_D is not an admissible pair: {0}")]
    InvalidPair(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
