use thiserror::Error;

/// Everything that can go wrong inside the engine.
///
/// The CLI maps these onto exit codes: capacity problems get their own code,
/// everything else is an input error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("capacity exceeded: {what} = {requested} is above the cap of {cap}")]
    Capacity {
        what: String,
        requested: usize,
        cap: usize,
    },
    #[error("duplicate relation name `{0}`")]
    Duplicate(String),
    #[error("`{0}` is reserved for a builtin relation")]
    Reserved(String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("relation `{relation}` has arity {expected}, atom supplies {found} arguments")]
    ArityMismatch {
        relation: String,
        expected: usize,
        found: usize,
    },
    #[error("variable `{0}` is not assigned")]
    Unassigned(String),
    #[error("undeclared variable `{0}`")]
    UndeclaredVariable(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid rank vector {0:?}: ranks must be canonical (use every value 0..m exactly)")]
    NonCanonical(Vec<u32>),
    #[error("negative scale factor {0}")]
    NegativeScale(String),
    #[error("operation `{op}` expects {expected} a zero position in the joint configuration")]
    ZeroPosition { op: &'static str, expected: &'static str },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported class: {0}")]
    UnsupportedClass(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("unknown operation `{0}`")]
    UnknownOperation(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid cost `{0}`")]
    InvalidCost(String),
    #[error("self-loop on vertex `{0}`: such an edge costs 1 in every ordering")]
    SelfLoop(String),
}

impl Error {
    pub fn capacity(what: impl Into<String>, requested: usize, cap: usize) -> Self {
        Error::Capacity {
            what: what.into(),
            requested,
            cap,
        }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
