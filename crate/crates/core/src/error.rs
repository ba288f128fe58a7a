use std::fmt;

/// Errors produced anywhere in the library.
///
/// Every variant maps to a stable machine-readable [`code`](Error::code); the
/// CLI and the C ABI both expose that code alongside the message.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
        expected: Vec<String>,
    },

    #[error("coefficient {coefficient} of monomial `{monomial}` is not divisible by {divisor}")]
    NotDivisible {
        monomial: String,
        coefficient: String,
        divisor: String,
    },

    #[error("term count {terms} exceeds the limit of {limit}")]
    ResourceLimit { terms: usize, limit: usize },

    #[error("invalid prime {p}: {reason}")]
    InvalidPrime { p: u64, reason: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("missing intersection number for `{0}`; add it to the intersection table")]
    MissingIntersectionNumber(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("length mismatch: expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax_error",
            Error::NotDivisible { .. } => "not_divisible",
            Error::ResourceLimit { .. } => "resource_limit",
            Error::InvalidPrime { .. } => "invalid_prime",
            Error::InvalidInput(_) => "invalid_input",
            Error::InvalidSeries(_) => "invalid_series",
            Error::AmbientMismatch(_) => "ambient_mismatch",
            Error::MissingIntersectionNumber(_) => "missing_intersection_number",
            Error::HypothesisViolation(_) => "hypothesis_violation",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::Internal(_) => "internal",
        }
    }

    /// True when the error signals a bug rather than bad user input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }

    pub(crate) fn invalid_input(msg: impl fmt::Display) -> Self {
        Error::InvalidInput(msg.to_string())
    }
}
