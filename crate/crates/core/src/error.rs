use thiserror::Error;

use crate::coeff_ring::CoeffError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("unsupported family/rank: {0}")]
    Unsupported(String),
    #[error("{0} is not dominant")]
    NotDominant(String),
    #[error("{0} is not minuscule")]
    NotMinuscule(String),
    #[error("function is not Weyl-invariant")]
    NotInvariant,
    #[error("index {index} out of range 0..={max}")]
    OutOfRange { index: usize, max: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("parameter entry {0} is not invertible")]
    NotInvertible(usize),
    #[error("resource guard: {what} would reach {size} terms (limit {limit})")]
    ResourceLimit { what: String, size: usize, limit: usize },
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("weight list is not closed under dominance: {0} is missing")]
    NotDownwardClosed(String),
}
