use thiserror::Error;

/// Errors raised by the library.
///
/// Variants fall in two families: input validation (the caller handed over
/// something malformed or outside an operation's domain) and invariant
/// failures (a mathematical identity that must hold did not). The CLI maps
/// the first family to exit code 2 and the second to exit code 3.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("non-unit eigenvalue scalar: weight undefined ({0})")]
    WeightUndefined(String),

    #[error("numeric evaluation needs a numeric q: {0}")]
    NeedsNumericQ(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for failures of asserted mathematical invariants, as opposed to
    /// rejected input.
    pub fn is_invariant(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! ensure {
    ($cond:expr, $err:expr) => {
        if !$cond {
            return Err($err);
        }
    };
}
pub(crate) use ensure;
