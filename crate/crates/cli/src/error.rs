use std::fmt;

use thiserror::Error;

/// A syntax error at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Problems with the input; the process exits with status 2.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("invalid {context}: {source}")]
    Invalid {
        context: String,
        #[source]
        source: torsor_core::Error,
    },
    #[error("{0}")]
    Missing(String),
    #[error("{0}")]
    Usage(String),
}

impl InputError {
    pub fn invalid(context: impl Into<String>) -> impl FnOnce(torsor_core::Error) -> InputError {
        let context = context.into();
        move |source| InputError::Invalid { context, source }
    }
}
