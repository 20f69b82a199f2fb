use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not symmetric")]
    NonSymmetric,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("graph is not reduced")]
    NotReduced,

    #[error("graph is not a tree")]
    NotATree,

    #[error("rank {0} is odd; maximal trees only exist for even rank")]
    OddRank(usize),

    #[error("graph too large: {n} vertices exceeds the limit of {max}")]
    TooLarge { n: usize, max: usize },

    #[error("malformed graph6 record: {0}")]
    MalformedGraph6(String),

    #[error("gamma value {value} outside [0, {k}]")]
    GammaOutOfRange { value: i64, k: i64 },

    #[error("hypotheses not met: {0}")]
    HypothesesNotMet(String),

    #[error("seed set for rank {0} unavailable")]
    SeedUnavailable(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
