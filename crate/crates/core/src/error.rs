use thiserror::Error;

/// Errors surfaced by the library.
///
/// Internal arithmetic violations (e.g. a non-exact isobaric division) are
/// bugs, not states a caller can reach with valid input; those panic instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("permutation {word} does not lie in S_{n}")]
    NotInSn { word: String, n: usize },

    #[error("the identity permutation has no descent")]
    NoDescent,

    #[error("partition has {parts} parts, which exceeds the descent position {p}")]
    DescentTooSmall { parts: usize, p: usize },

    #[error("transition step is undefined on {0} (identity or Grassmannian)")]
    TransitionUndefined(String),

    #[error("{guard} guard exceeded at node {node} (limit {limit})")]
    GuardExceeded {
        guard: &'static str,
        node: String,
        limit: usize,
    },

    #[error("stable coefficients did not settle below the shift cap m <= {cap} for {word}")]
    StabilizationCap { word: String, cap: usize },

    #[error("variable renaming is not injective on the active variables")]
    NonInjectiveRename,

    #[error("incompatible split: {0}")]
    IncompatibleSplit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
