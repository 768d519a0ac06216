use std::fmt;

use thiserror::Error;

/// Kinds of structural problems found by [`crate::HyperGraph::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// Edge arity differs from the graph dimension.
    WrongArity,
    /// A coordinate is 0 or exceeds its color-class size.
    OutOfRange,
    /// Edge is lexicographically smaller than its predecessor.
    Unsorted,
    /// Edge equals its predecessor.
    Duplicate,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationKind::WrongArity => "wrong arity",
            ViolationKind::OutOfRange => "out-of-range coordinate",
            ViolationKind::Unsorted => "unsorted edges",
            ViolationKind::Duplicate => "duplicate edge",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// A caller broke an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid graph: {kind} at edge {index}")]
    Invalid { index: usize, kind: ViolationKind },

    /// A configured size guard refused the work.
    #[error("resource guard: {0}")]
    Resource(String),

    /// Failure inside a Monte Carlo replicate; aborts the whole run.
    #[error("replicate {rep} failed: {source}")]
    Replicate {
        rep: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    /// Innermost error, looking through replicate wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Replicate { source, .. } => source.root(),
            e => e,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
