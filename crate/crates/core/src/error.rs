use thiserror::Error;

/// Errors raised by the digit, codec, interval, calendar and diagnostic
/// operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("digits are not strictly increasing at position {position}")]
    NotMonotone { position: usize },
    #[error("finite digit at position {position} follows an infinity marker")]
    MalformedTail { position: usize },
    #[error("digit at position {position} must be a positive integer")]
    NonPositiveDigit { position: usize },
    #[error("replacement prefix ends at {last} but the next retained digit is {next}")]
    IllFormedReplacement { last: String, next: String },
    #[error("operation needs {needed} digits but only {available} are available")]
    InsufficientPrefix { needed: usize, available: usize },
    #[error("theta sequence violates the Z_c structure at position {position}")]
    ThetaViolation { position: usize },
    #[error("value out of domain: {0}")]
    OutOfDomain(String),
    #[error("digit iteration did not terminate within {0} steps")]
    NonTermination(usize),
    #[error("fundamental intervals need a non-empty generator")]
    EmptyGenerator,
    #[error("bad range: {0}")]
    BadRange(String),
    #[error("{0} is not in the image of the affine map")]
    NotInImage(String),
    #[error("degenerate input interval: {0}")]
    DegenerateInput(String),
    #[error("invalid intercalation rule: {0}")]
    InvalidRule(String),
    #[error("enclosure of {0} could not be resolved at the maximum precision")]
    PrecisionExhausted(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotMonotone { .. } => "NotMonotone",
            Error::MalformedTail { .. } => "MalformedTail",
            Error::NonPositiveDigit { .. } => "NonPositiveDigit",
            Error::IllFormedReplacement { .. } => "IllFormedReplacement",
            Error::InsufficientPrefix { .. } => "InsufficientPrefix",
            Error::ThetaViolation { .. } => "ThetaViolation",
            Error::OutOfDomain(_) => "OutOfDomain",
            Error::NonTermination(_) => "NonTermination",
            Error::EmptyGenerator => "EmptyGenerator",
            Error::BadRange(_) => "BadRange",
            Error::NotInImage(_) => "NotInImage",
            Error::DegenerateInput(_) => "DegenerateInput",
            Error::InvalidRule(_) => "InvalidRule",
            Error::PrecisionExhausted(_) => "PrecisionExhausted",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
