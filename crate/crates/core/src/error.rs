use thiserror::Error;

/// Errors raised by diagram construction, parsing and the algebraic maps.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invariant violated ({invariant}): {detail}")]
    Invariant {
        invariant: &'static str,
        detail: String,
    },
    #[error("malformed diagram: {0}")]
    Structure(String),
    #[error("degree {degree} exceeds the configured cap {cap}")]
    CapExceeded { degree: usize, cap: usize },
    #[error("unknown skeleton component or edge `{0}`")]
    UnknownComponent(String),
    #[error("label {label} out of range 1..={g}")]
    LabelOutOfRange { label: usize, g: usize },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("inconsistent frames: {0}")]
    FrameMismatch(String),
    #[error("weight data: {0}")]
    Weight(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    /// Parse failures map to exit code 2, everything else to 1.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Syntax { .. } | Error::Invariant { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
