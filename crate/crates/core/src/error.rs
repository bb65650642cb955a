use thiserror::Error;

use crate::exactalg::{FieldSpec, Variable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inverse of zero")]
    DivisionByZero,
    #[error("operands live in different fields ({0} and {1})")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("{0} is not an odd prime below 2^31")]
    InvalidModulus(u64),
    #[error("variable {0} is not assigned")]
    Unassigned(Variable),
    #[error("invalid variable: {0}")]
    InvalidVariable(String),
    #[error("matrix size must be at least 1")]
    EmptyMatrix,
    #[error("size {0} is odd but the symplectic form needs an even size")]
    OddSize(usize),
    #[error("matrix sizes differ ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("matrix entries must be constants")]
    NotConstant,
    #[error("matrix is singular")]
    Singular,
    #[error("group elements can only be sampled over a prime field")]
    SamplingOverRationals,
    #[error("characteristic 2 is excluded")]
    CharacteristicTwo,
    #[error("the empty word has no {0}")]
    EmptyWord(&'static str),
    #[error("word `{0}` is not primitive")]
    NotPrimitive(String),
    #[error("letter index {index} outside 1..={max}")]
    LetterOutOfRange { index: usize, max: usize },
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("expression does not match the expected pattern: {0}")]
    PatternMismatch(String),
    #[error("invalid arguments: {0}")]
    InvalidArgument(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
