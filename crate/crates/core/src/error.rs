use thiserror::Error;

/// Errors raised by the algebraic operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("operation is undefined on the unit monomial")]
    UndefinedOnUnit,

    #[error("colon quotient of a monomial by itself is degenerate")]
    DegeneratePair,

    #[error("shape mismatch: ({n1}, {q1}) vs ({n2}, {q2})")]
    DimensionMismatch {
        n1: usize,
        q1: usize,
        n2: usize,
        q2: usize,
    },

    #[error("term order {0} cannot compare mixed monomials")]
    WrongOrderKind(&'static str),

    #[error("no USLI with these degrees fits in {n} variables (need at least {required})")]
    InfeasibleAmbient { n: usize, required: usize },

    #[error("an AUSLI test needs at least 2 generators, got {0}")]
    TooFewGenerators(usize),

    #[error("value out of range: {0}")]
    Range(String),

    #[error("ideal is not squarefree stable: {0}")]
    StabilityViolation(String),

    #[error("oracle input too large: {size} exceeds ceiling {ceiling}")]
    OracleTooLarge { size: usize, ceiling: usize },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("classification error: {0}")]
    Classification(String),

    #[error("degenerate generator sequence: {0}")]
    DegenerateSequence(String),

    #[error("Gröbner engine input too large: {0}")]
    EngineTooLarge(String),

    #[error("oracle does not support this input: {0}")]
    UnsupportedOracle(String),

    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),

    #[error("invalid degree sequence: {0}")]
    InvalidDegreeSequence(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
