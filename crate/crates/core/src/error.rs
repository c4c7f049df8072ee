use thiserror::Error;

use crate::trigraph::VertexId;

/// Errors raised by parsing, replay, the profile machinery and the solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    #[error("vertex {0} is not live")]
    DeadVertex(VertexId),

    #[error("step {step}: {source}")]
    AtStep {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid contraction sequence: {0}")]
    InvalidSequence(String),

    #[error("incompatible refinement: {0}")]
    Incompatible(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("oracle budget exceeded: {0}")]
    Budget(String),

    /// A structural property of the dynamic programs failed. Always a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn at_step(self, step: usize) -> Self {
        Error::AtStep {
            step,
            source: Box::new(self),
        }
    }

    /// True when the error reports a broken internal invariant rather than bad input.
    pub fn is_invariant(&self) -> bool {
        match self {
            Error::Invariant(_) => true,
            Error::AtStep { source, .. } => source.is_invariant(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
