use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point lies outside the objective domain box")]
    OutOfDomain,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("duplicate seeds in batch")]
    DuplicateSeeds,

    #[error("non-finite fitness at generation {generation}")]
    NonFiniteFitness { generation: usize },

    #[error("error series starts at zero: R_t is undefined when e_0 = 0")]
    DegenerateStart,

    #[error("query point is optimal: the promising region is empty")]
    OptimalQuery,

    #[error("l = 0: the hit probability is monotone in sigma and has no interior maximizer")]
    NoInteriorMaximizer,

    #[error("x lies inside [a, b]: the interval formula assumes x outside")]
    InsideInterval,
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
