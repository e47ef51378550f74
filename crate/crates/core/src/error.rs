use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field order {0} is larger than the supported maximum")]
    FieldTooLarge(u32),
    #[error("modulus for q = {0} is not irreducible")]
    ReducibleModulus(u32),
    #[error("ambient dimension {v} does not fit a packed word for q = {q}")]
    DimensionTooLarge { v: usize, q: u32 },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("ambient mismatch: {0} vs {1}")]
    AmbientMismatch(String, String),
    #[error("invalid vector: {0}")]
    InvalidVector(String),
    #[error("expected a subspace of dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("refusing to enumerate {count} objects (budget {budget})")]
    BudgetExceeded { count: u64, budget: u64 },
    #[error("graph is not regular (witness vertex {witness})")]
    NotRegular { witness: String },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("common-neighbour counts take {} distinct values {values:?} (witness pairs {witnesses:?})", values.len())]
    TooManyValues { values: Vec<u64>, witnesses: Vec<(String, String)> },
    #[error("invalid spread: {0}")]
    InvalidSpread(String),
    #[error("self-check failed: {0}")]
    SelfCheck(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Error {
        Error::Parse { line, message: message.into() }
    }
}
