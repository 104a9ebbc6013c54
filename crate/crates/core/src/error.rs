use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus mismatch: x^{left}-1 vs x^{right}-1")]
    ModulusMismatch { left: usize, right: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("index {index} out of range (bound {bound})")]
    OutOfRange { index: usize, bound: usize },

    #[error("expected a column set of size {expected}, got {actual}")]
    Arity { expected: usize, actual: usize },

    #[error("row-removal condition fails for removed row {row}")]
    RowRemovalCondition { row: usize },

    #[error("no column subsets of size {needed} exist among {available} columns")]
    NoSubset { needed: usize, available: usize },

    #[error("shift assignment does not conform: {0}")]
    Conformance(String),

    #[error("duplicate exponent {exponent} in cell ({row}, {col}) would cancel over F2")]
    Cancellation {
        row: usize,
        col: usize,
        exponent: usize,
    },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
