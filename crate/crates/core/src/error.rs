use std::fmt;

use thiserror::Error;

/// Errors produced by the engine outside of text parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    IndexOutOfRange {
        index: usize,
        dim: usize,
    },
    DuplicateProduct {
        i: usize,
        j: usize,
        first_line: usize,
    },
    MissingDim,
}

/// A bracket-table parse failure. `line` and `column` are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::IndexOutOfRange { index, dim } => {
                write!(f, "basis index e{index} out of range for dim {dim}")
            }
            ParseErrorKind::DuplicateProduct { i, j, first_line } => write!(
                f,
                "duplicate product [e{i},e{j}] (first defined on line {first_line})"
            ),
            ParseErrorKind::MissingDim => write!(f, "missing `dim <n>` line"),
        }
    }
}
