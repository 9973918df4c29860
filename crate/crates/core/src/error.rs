use std::path::PathBuf;

use crate::edit::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("symbol {0:?} is not part of the alphabet")]
    UnknownSymbol(char),
    #[error("symbol code {0} is outside an alphabet of {1} symbols")]
    SymbolOutOfRange(u8, usize),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error(
        "cost matrix must be {expected}x{expected}, found {rows} rows with a row of {cols} columns"
    )]
    Dimension {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("invalid cost model: {0}")]
    InvalidCosts(String),
    #[error("cost model is not metric ({} violations)", .0.len())]
    NotMetric(Vec<Violation>),
    #[error("invalid edit operation: {0}")]
    InvalidOp(String),
    #[error("inconsistent edit script: {0}")]
    InconsistentScript(String),
    #[error("string set is empty")]
    EmptySet,
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{}:{line}: {msg}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            msg: msg.into(),
        }
    }

    /// True for errors caused by the caller's input rather than the environment.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Io(_))
    }
}
