//! Exact arithmetic: fields, polynomials, trigraded series, polynomial
//! matrices and linear algebra on graded slices.

pub mod field;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod series;
pub mod slice;

pub use field::{Field, Fp, FpA, FpB, Rational, PRIME_A, PRIME_B};
pub use linalg::{dense_inverse, dense_rank, rank, rank_and_kernel, Echelon, Homology, SparseVec};
pub use matrix::PolyMatrix;
pub use poly::{Monomial, Polynomial, MAX_VARS};
pub use series::{series_expand, SeriesCheck, TriMono, TriSeries};
pub use slice::{graded_slice_rank, SliceBasis};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactAlgError {
    #[error("ring arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("matrix entry ({row}, {col}) is not homogeneous of the expected q-degree {expected}")]
    Inhomogeneous { row: usize, col: usize, expected: i32 },
    #[error("denominator factor {0:?} has non-positive q-degree")]
    NonPositiveDenominator(TriMono),
    #[error("series is not divisible: {0}")]
    NotDivisible(String),
}
