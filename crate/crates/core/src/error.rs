use thiserror::Error;

/// Errors raised by the algebra, lattice and descriptor routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("generator index {index} outside 1..={rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("rank must be positive")]
    ZeroRank,

    #[error("element is not homogeneous: degrees {0} and {1} both occur")]
    MixedDegree(i64, i64),

    #[error("expected an element of degree {expected}, found degree {found}")]
    WrongDegree { expected: i64, found: i64 },

    #[error("weight mismatch: {left} != {right}")]
    WeightMismatch { left: u64, right: u64 },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("malformed algebra: {0}")]
    MalformedAlgebra(String),

    #[error("malformed module: {0}")]
    MalformedModule(String),

    #[error("subspace is not a two-sided ideal: {0}")]
    NotAnIdeal(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("degree {degree} out of range (max {max})")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("degree {0} is exceptional: graded component vanishes")]
    ExceptionalDegree(usize),

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
