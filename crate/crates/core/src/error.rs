// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: a[{i}][{j}] and a[{j}][{i}] are not conjugate (1-based)")]
    NotHermitian { i: usize, j: usize },
    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue}")]
    NotPsd { min_eigenvalue: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("diagonal entry {index} is not strictly positive")]
    ZeroDiagonal { index: usize },
    #[error("eigensolver did not converge after {sweeps} sweeps")]
    ConvergenceFailure { sweeps: usize },
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("unsupported kind: {0}")]
    UnsupportedKind(String),
    #[error("block size {b} is invalid for order {n}")]
    BadBlockSize { b: usize, n: usize },
    #[error("k = {k} is invalid for order {n}")]
    BadK { k: usize, n: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("function on S_n is not positive definite: smallest eigenvalue {min_eigenvalue}")]
    NotPositiveDefiniteFunction { min_eigenvalue: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable variant name, printed by the CLI next to precondition failures.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotSquare { .. } => "NotSquare",
            Error::NotHermitian { .. } => "NotHermitian",
            Error::NotPsd { .. } => "NotPsd",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::SizeMismatch(_) => "SizeMismatch",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::ZeroDiagonal { .. } => "ZeroDiagonal",
            Error::ConvergenceFailure { .. } => "ConvergenceFailure",
            Error::TooLarge(_) => "TooLarge",
            Error::UnsupportedKind(_) => "UnsupportedKind",
            Error::BadBlockSize { .. } => "BadBlockSize",
            Error::BadK { .. } => "BadK",
            Error::InvalidInput(_) => "InvalidInput",
            Error::NotPositiveDefiniteFunction { .. } => "NotPositiveDefiniteFunction",
            Error::Parse(_) => "Parse",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
