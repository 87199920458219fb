use thiserror::Error;

use crate::algebra::AxiomViolation;
use crate::states::StateViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input text or table.
    #[error("format error at line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("{what}: requested {requested} exceeds configured limit {limit}")]
    Capacity {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    /// A precondition on the mathematical input does not hold.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("not a BCK-algebra: {} failed axiom instance(s), first {}", .0.len(), .0[0])]
    NotBck(Vec<AxiomViolation>),

    #[error("state operator check failed: {0}")]
    State(StateViolation),

    /// Two routes that must agree produced different answers.
    #[error("consistency check failed: {0}")]
    Inconsistent(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },

    #[error("{path}: {source}")]
    InFile { path: String, source: Box<Error> },
}

impl Error {
    pub(crate) fn format(line: usize, message: impl Into<String>) -> Self {
        Error::Format {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }

    pub fn in_file(path: &std::path::Path, err: Error) -> Self {
        Error::InFile {
            path: path.display().to_string(),
            source: Box::new(err),
        }
    }

    /// True for malformed input, possibly wrapped with a file path.
    pub fn is_format(&self) -> bool {
        match self {
            Error::Format { .. } | Error::SizeMismatch { .. } | Error::Io { .. } => true,
            Error::InFile { source, .. } => source.is_format(),
            _ => false,
        }
    }

    pub(crate) fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            message: err.to_string(),
        }
    }
}
