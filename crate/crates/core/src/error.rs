use thiserror::Error;

/// Errors raised by the library. Every operation is pure, so an error always
/// means the inputs were inconsistent with one another or with the contract.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank mismatch: expected rank {expected}, found rank {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("coordinate vector of length {found} does not fit rank {n} (expected {expected})")]
    CoordinateLength {
        n: usize,
        expected: usize,
        found: usize,
    },

    #[error("unknown generator {0}")]
    UnknownGenerator(String),

    #[error("element is not supported on {0}")]
    SupportViolation(&'static str),

    #[error("operation requires rank at least {min}, got {found}")]
    RankTooSmall { min: usize, found: usize },

    #[error("element is not central")]
    NotCentral,

    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(String),

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("parameter index ({i},{j},{k}) is derived (first index exceeds the pair), only 1 <= i <= k is accepted")]
    DerivedIndex { i: usize, j: usize, k: usize },

    #[error("parameter index ({i},{j},{k}) is out of range for rank {n}")]
    BadIndex {
        i: usize,
        j: usize,
        k: usize,
        n: usize,
    },

    #[error("duplicate parameter entry ({i},{j},{k})")]
    DuplicateIndex { i: usize, j: usize, k: usize },

    #[error("irrational basis mismatch")]
    BasisMismatch,

    #[error("invalid irrational basis: {0}")]
    InvalidBasis(String),

    #[error("symbol `{0}` is not declared in the irrational basis")]
    UnknownSymbol(String),

    #[error("could not parse {what}: {input}")]
    Parse { what: &'static str, input: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(what: &'static str, input: impl Into<String>) -> Self {
        Error::Parse {
            what,
            input: input.into(),
        }
    }
}
