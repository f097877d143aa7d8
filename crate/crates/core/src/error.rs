use thiserror::Error;

use crate::ddstep::AugmentationTrace;
use crate::ratlin::RatVec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("polyhedron is not pointed: rank of the stacked constraint matrix is {rank}, dimension is {dim}")]
    NotPointed { rank: usize, dim: usize },

    /// A precondition of the called operation does not hold.
    #[error("{0}")]
    Usage(String),

    #[error("linear program is infeasible")]
    InfeasibleLp,

    #[error("linear program is unbounded")]
    UnboundedLp { direction: RatVec },

    #[error("work budget exceeded: {what} needs more than {budget} units")]
    WorkBudget { what: String, budget: u64 },

    #[error("augmentation stopped after {cap} iterations without reaching an optimum")]
    IterationCap {
        cap: usize,
        trace: Box<AugmentationTrace>,
    },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}
