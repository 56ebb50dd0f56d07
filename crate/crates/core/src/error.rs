use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid cyclotomic order {0}; order must be at least 1")]
    InvalidOrder(u64),

    #[error("zero has no multiplicative inverse")]
    NotInvertible,

    #[error("malformed fusion ring: {0}")]
    MalformedRing(String),

    #[error("index {index} out of range for {len} labels")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("subset must contain the unit")]
    MissingUnit,

    #[error("subset not closed: {left} x {right} contains {escaped}")]
    NotClosed {
        left: String,
        right: String,
        escaped: String,
    },

    #[error("subset not closed under duality: dual of {0} escapes")]
    NotClosedUnderDual(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("a and b must be coprime (got a = {a}, b = {b})")]
    NotCoprime { a: u32, b: u32 },

    #[error("parameter out of range: {0}")]
    Range(String),

    #[error("label {0} out of range")]
    LabelOutOfRange(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("cannot parse rational {0:?}")]
    Rational(String),

    #[error("cannot parse cyclotomic record: {0}")]
    Cyclotomic(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
