use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Table text could not be parsed. Line and column are 1-based and refer to the input text.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown built-in table `{0}`")]
    UnknownBuiltin(String),

    #[error("matrix is not symmetric: |M[{row},{col}] - M[{col},{row}]| = {deviation:e} exceeds tolerance")]
    SymmetryViolation {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("matrix is not antisymmetric: |T[{row},{col}] + T[{col},{row}]| = {deviation:e} exceeds tolerance")]
    AntisymmetryViolation {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error(
        "{quantity} has imaginary part {imag:e} at [{row},{col}]; seed and basis are inconsistent"
    )]
    NotReal {
        quantity: &'static str,
        row: usize,
        col: usize,
        imag: f64,
    },

    #[error(
        "metric violation: 1/2(ab* + ba*) for (e{a}, e{b}) has non-scalar component {residual:e}"
    )]
    MetricViolation { a: usize, b: usize, residual: f64 },

    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),

    #[error("eigenvalue iteration did not converge (off-diagonal norm {0:e})")]
    NoConvergence(f64),
}

impl Error {
    /// Internal consistency failures (as opposed to bad input).
    pub fn is_consistency_failure(&self) -> bool {
        matches!(
            self,
            Error::SymmetryViolation { .. }
                | Error::AntisymmetryViolation { .. }
                | Error::NotReal { .. }
                | Error::NoConvergence(_)
        )
    }
}
