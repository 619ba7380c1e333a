use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed linear program: {0}")]
    MalformedProgram(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("points are affinely dependent")]
    AffinelyDependent,

    #[error("point lies outside the affine hull")]
    OutsideAffineHull,

    #[error("dimension {dim} exceeds the volume cap {cap}")]
    VolumeDimensionCap { dim: usize, cap: usize },

    #[error("invalid dilation factors: {0}")]
    InvalidLambda(String),

    #[error("rank {k} exceeds the affine rank {rank} of the point set")]
    RankTooLarge { k: usize, rank: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("a seed is required for sampled verification of {subsets} subsets")]
    SeedRequired { subsets: u128 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("certificate rejected: {0}")]
    Certificate(String),

    /// Two independent decision routes disagreed. Indicates a bug, never expected.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
