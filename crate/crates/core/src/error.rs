use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("multiplication table is empty")]
    EmptyTable,

    #[error("multiplication table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("table entry ({row}, {col}) = {value} is out of range for a monoid of size {size}")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },

    #[error("element index {index} is out of range for a monoid of size {size}")]
    ElementOutOfRange { index: usize, size: usize },

    #[error("declared unit {unit} is out of range for a monoid of size {size}")]
    NoUnit { unit: usize, size: usize },

    #[error("declared unit {unit} fails the unit law at element {witness}")]
    WrongUnit { unit: usize, witness: usize },

    #[error("table is not associative: ({i}*{j})*{k} != {i}*({j}*{k})")]
    NotAssociative { i: usize, j: usize, k: usize },

    #[error("monoid is not R-trivial: elements {0} and {1} generate the same right ideal")]
    NotRTrivial(usize, usize),

    #[error("monoid is not L-trivial: elements {0} and {1} generate the same left ideal")]
    NotLTrivial(usize, usize),

    #[error("set does not generate the monoid: closure has {closure} of {size} elements")]
    NotGenerating { closure: usize, size: usize },

    #[error("invalid modulus {0}: must be at least 2")]
    InvalidModulus(String),

    #[error("operands live in different monoid algebras (host monoids differ)")]
    HostMismatch,

    #[error("operands have different coefficient rings")]
    RingMismatch,

    #[error("matrix dimensions do not match: {0} vs {1}")]
    DimMismatch(usize, usize),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("coefficient ring rejected: {0}")]
    RingRejected(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// Stable machine-readable category, used as the CLI error tag.
    pub fn category(&self) -> &'static str {
        match self {
            Error::EmptyTable
            | Error::NotSquare { .. }
            | Error::IndexOutOfRange { .. }
            | Error::ElementOutOfRange { .. }
            | Error::NoUnit { .. }
            | Error::WrongUnit { .. }
            | Error::NotAssociative { .. } => "InvalidMonoid",
            Error::NotRTrivial(..) => "NotRTrivial",
            Error::NotLTrivial(..) => "NotLTrivial",
            Error::NotGenerating { .. } => "NotGenerating",
            Error::InvalidModulus(_) | Error::RingRejected(_) => "RingRejected",
            Error::HostMismatch | Error::RingMismatch | Error::DimMismatch(..) => "Mismatch",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::Parse { .. } => "ParseError",
        }
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
