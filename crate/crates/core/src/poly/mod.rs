//! Integer polynomials in the variables `U_e`, prime fields, and
//! polynomial matrices.

mod field;
mod matrix;
mod multipoly;

use thiserror::Error;

pub use field::{is_prime, PrimeField, DEFAULT_PRIME};
pub use matrix::{
    det_modp, det_symbolic, integer_matrix, Matrix, ModMatrix, PolyMatrix, DEFAULT_SYMBOLIC_LIMIT,
};
pub use multipoly::{Monomial, MultiPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials over {0} and {1} variables cannot be combined")]
    UniverseMismatch(usize, usize),
    #[error("exponent of U{0} overflowed")]
    ExponentOverflow(usize),
    #[error("evaluation point has only {0} coordinates")]
    MissingCoordinate(usize),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("inexact polynomial division")]
    InexactDivision,
    #[error("cannot parse polynomial {0:?}")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("matrix is {0}x{1}, not square")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: {left:?} against {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("rows have different lengths")]
    Ragged,
    #[error("row or column labels are not distinct")]
    DuplicateLabels,
    #[error("matrix of size {size} exceeds the symbolic limit {limit}")]
    SizeGuard { size: usize, limit: usize },
}
