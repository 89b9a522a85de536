//! Exact integer arithmetic: polynomials, truncated series, integer matrices
//! and lattices.

mod lattice;
mod matrix;
mod poly;
mod series;

pub use lattice::{EchelonLattice, SparseVec};
pub use matrix::{IntMatrix, RationalSolution, Snf};
pub use poly::{poly, MultiPoly};
pub use series::{one_minus, one_minus_t_pow, series_from_rational, TruncSeries};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("series denominator has non-unit constant term {0}")]
    NonUnitConstantTerm(String),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}
