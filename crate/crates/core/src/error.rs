use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid code dimensions {n}x{m}: both must be at least 1")]
    EmptyCode { n: usize, m: usize },

    #[error("bit buffer has {found} entries, expected {expected}")]
    BitCount { expected: usize, found: usize },

    #[error("entry ({row}, {col}) is {value}, expected 0 or 1")]
    NonBinary { row: usize, col: usize, value: u8 },

    #[error("malformed header: {0}")]
    MalformedHeader(String),

    #[error("row {row}: wrong row length, expected {expected} characters, found {found}")]
    WrongRowLength {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("row {row}, column {col}: illegal character {ch:?}")]
    IllegalCharacter { row: usize, col: usize, ch: char },

    #[error("expected {expected} rows, found {found}")]
    WrongRowCount { expected: usize, found: usize },

    #[error("code file is not newline-terminated")]
    MissingNewline,

    #[error("unexpected data after the last row")]
    TrailingData,

    #[error("coalition is empty")]
    EmptyCoalition,

    #[error("coalition lists user {0} more than once")]
    DuplicateIndex(usize),

    #[error("user index {index} out of range [1, {m}]")]
    IndexOutOfRange { index: usize, m: usize },

    #[error("the two coalitions are identical")]
    IdenticalCoalitions,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn parse(what: &'static str, input: impl Into<String>) -> Self {
        Error::Parse {
            what,
            input: input.into(),
        }
    }
}
