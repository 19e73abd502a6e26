use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed rational `{0}`")]
    MalformedRational(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch in {context}: expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        context: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("invalid groupoid: {law} fails at {witness}")]
    InvalidGroupoid { law: String, witness: String },
    #[error("invalid homomorphism: {law} fails at {witness}")]
    InvalidHomomorphism { law: String, witness: String },
    #[error("invalid representation: {law} fails at {witness}")]
    InvalidRepresentation { law: String, witness: String },
    #[error("level {level} has {size} elements, over the budget of {budget}")]
    Overflow { level: usize, size: usize, budget: usize },
    #[error("{what} index {index} out of range (bound {bound})")]
    IndexOutOfRange { what: String, index: usize, bound: usize },
    #[error("not a chain map in degree {degree}: {witness}")]
    NotChainMap { degree: i64, witness: String },
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("no unique lift: {0}")]
    NoUniqueLift(String),
    #[error("no section over object `{0}`")]
    MissingSection(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown reference `{0}`")]
    DanglingReference(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
