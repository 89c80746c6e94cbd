use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A final value was expected to be an integer but was not.
    #[error("value is not an integer: {value}")]
    NonInteger { value: String },

    /// Inverting zero. Raised when a genus-zero evaluation hits a point where
    /// the staircase Schur value vanishes, or when a matrix is singular.
    #[error("singular quantum Euler class: {0}")]
    SingularEuler(String),

    #[error("division by zero")]
    DivisionByZero,

    /// `n(ell - g + 1)` must be even for the maximal-subbundle count.
    #[error(
        "parity hypothesis violated: n(ell - g + 1) = {product} is odd (n={n}, g={g}, ell={ell})"
    )]
    Parity {
        n: u32,
        g: u32,
        ell: i64,
        product: i64,
    },

    #[error("polynomial is not weighted homogeneous")]
    NonHomogeneous,

    #[error("invalid partition {parts:?}: {reason}")]
    InvalidPartition { parts: Vec<u32>, reason: String },

    /// A ring axiom or eigenvalue identity failed in the quantum cohomology
    /// algebra.
    #[error("algebra check failed: {0}")]
    Algebra(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cache file {path}: {reason}")]
    Cache { path: PathBuf, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable code used in CLI output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonInteger { .. } => "NONINTEGER",
            Error::SingularEuler(_) | Error::DivisionByZero => "SINGULAR_EULER",
            Error::Parity { .. } => "PARITY",
            Error::NonHomogeneous => "NONHOMOGENEOUS",
            Error::Algebra(_) => "ALGEBRA",
            Error::InvalidPartition { .. } | Error::InvalidArgument(_) => "USAGE",
            Error::Cache { .. } | Error::Io(_) => "IO",
        }
    }

    /// True for violated mathematical assumptions, as opposed to bad input.
    pub fn is_math_assumption(&self) -> bool {
        matches!(
            self,
            Error::NonInteger { .. }
                | Error::SingularEuler(_)
                | Error::DivisionByZero
                | Error::Algebra(_)
        )
    }
}
