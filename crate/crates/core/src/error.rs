use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Structural failures. An infeasible plan is not an error: it is the void
/// value, returned as an ordinary result.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("capacity exceeded: {what} needs {needed}, limit is {limit}")]
    CapacityExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("invalid choice: {0}")]
    InvalidChoice(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::CapacityExceeded { .. })
    }
}
