use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid signature (p, q) = ({p}, {q}): d = p + q must be at least 2")]
    InvalidSignature { p: usize, q: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("no such vector: {0}")]
    NoSuchVector(String),
    #[error("matrix has nonzero trace {0}")]
    NonzeroTrace(String),
    #[error("seed is zero")]
    ZeroSeed,
    #[error("matrix is not in the complement s")]
    NotInComplement,
    #[error("matrix lies in so(p,q)")]
    InSoPq,
    #[error("vector is not in the span of the basis")]
    NotInSpan,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("golden file: {0}")]
    Golden(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
