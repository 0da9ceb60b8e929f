use std::fmt;

/// Errors raised by the exact-arithmetic and verification kernels.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("evaluation at a pole of {0}")]
    Pole(String),
    #[error("missing value for variable `{0}`")]
    MissingValue(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unsupported variable placement: {0}")]
    UnsupportedPlacement(String),
    #[error("series domain violation: {0}")]
    Domain(String),
    #[error("arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("series operands disagree on variables")]
    VariableMismatch,
    #[error("expected a positive rational, found {0}")]
    NonPositive(String),
    #[error("cofactor {0} exceeds the factorization bound")]
    FactorBound(String),
    #[error("truncation too small: {columns} monomials of degree <= {degree} but only {rows} certified coefficients")]
    TruncationTooSmall {
        degree: u32,
        columns: usize,
        rows: usize,
    },
    #[error("descent chain exceeded its iteration guard of {0} steps")]
    IterationGuard(usize),
    #[error("kernel generator `{0}` involves the power variable; it must lie in a subfield disjoint from it")]
    KernelNotDisjoint(String),
    #[error("{0}")]
    Parse(ParseError),
}

/// A syntax error with a 1-based column inside the parsed text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
