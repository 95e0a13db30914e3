use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid group spec `{spec}`: {reason}")]
    GroupSpec { spec: String, reason: String },

    #[error("`{node}` expects {expected} argument(s), found {found}")]
    Arity {
        node: String,
        expected: String,
        found: usize,
    },

    #[error("limit exceeded: {0}")]
    Limit(String),

    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),

    #[error("leaf B({0}) is not nilpotent; its prime decomposition is not supported")]
    NonNilpotent(String),

    #[error("no value supplied for basis element {0}")]
    MissingValue(String),

    #[error("basis ordering violated: {0}")]
    OrderViolation(String),

    #[error("{0} is not a group of prime-power order")]
    NotPGroup(String),

    #[error("invalid value: {0}")]
    Value(String),

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Value(e.to_string())
    }
}
