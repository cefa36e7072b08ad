use thiserror::Error;

/// Errors raised by the algebraic routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("scalar {value} is not defined modulo {p}")]
    NotReducible { value: String, p: u64 },

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("vertex set {0} is not an interval")]
    NotAnInterval(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("module does not commute: paths {left} and {right} differ")]
    NonCommuting { left: String, right: String },

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("{inner} is not an up-set of {outer}")]
    NotUpSet { inner: String, outer: String },

    #[error("{inner} is not a down-set of {outer}")]
    NotDownSet { inner: String, outer: String },

    #[error("resolution did not terminate within {0} steps")]
    MaxLengthExceeded(usize),

    #[error("monomorphism search over GF({p}) was inconclusive for interval {interval}")]
    SpanSearchInconclusive { interval: String, p: u64 },

    #[error("operation requires a commutative ladder")]
    NotLadder,

    #[error("interval family is not an incidence category: {0}")]
    NotIncidenceCategory(String),

    #[error("cover subset {0} is bounded but has no join")]
    MissingJoin(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
