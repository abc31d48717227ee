use thiserror::Error;

use crate::semantics::SemanticsId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown argument `{0}`")]
    UnknownArgument(String),

    #[error("invalid argument name `{0}` (expected [A-Za-z0-9_]+)")]
    InvalidArgumentName(String),

    #[error("{what}: {actual} arguments exceeds the limit of {limit}")]
    SizeLimit {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("set {{{0}}} is not admissible")]
    NotAdmissible(String),

    #[error("semantics `{semantics}` is not supported by {operation}")]
    UnsupportedSemantics {
        semantics: SemanticsId,
        operation: &'static str,
    },

    #[error("frameworks do not share the same argument set")]
    ArgumentSetMismatch,

    #[error("labelling does not cover the framework's arguments")]
    LabellingMismatch,

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("line {line}, column {column}: {reason}")]
    Parse {
        line: usize,
        column: usize,
        reason: String,
    },

    #[error("line {line}: attack endpoint `{name}` is never declared")]
    UndeclaredArgument { name: String, line: usize },
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::UndeclaredArgument { .. } => 2,
            Error::SizeLimit { .. } => 3,
            Error::InternalInvariantViolation(_) => 4,
            _ => 1,
        }
    }
}
