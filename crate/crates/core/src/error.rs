use thiserror::Error;

use crate::cyclo::CycError;
use crate::roots::Family;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Cyclo(#[from] CycError),
    #[error("invalid category parameters: {0}")]
    InvalidSpec(String),
    #[error("rank {n} exceeds the supported limit {max}")]
    RankTooLarge { n: usize, max: usize },
    #[error("more than {max} simple objects")]
    TooManySimples { max: usize },
    #[error("vector length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("{0} is not a simple object of this category")]
    NotInSet(String),
    #[error("wrong grade for {weight}: expected grade {expected}")]
    WrongGrade { weight: String, expected: u8 },
    #[error("quantum group level set differs from the simple set: {0}")]
    LevelSetMismatch(String),
    #[error("internal identity violated: {0}")]
    Internal(String),
    #[error("expected a nonnegative integer, got {0}")]
    NonIntegral(String),
    #[error("operation only defined for family {0}")]
    WrongFamily(Family),
    #[error("malformed plumbing graph: {0}")]
    MalformedGraph(String),
    #[error("plumbing graph is not a forest")]
    NotForest,
    #[error("selection is not admissible: {0}")]
    InvalidSelection(String),
    #[error("graph has {vertices} vertices, more than the supported {max}")]
    GraphTooLarge { vertices: usize, max: usize },
    #[error("degenerate normalization: F(U_+) or F(U_-) vanishes")]
    DegenerateNormalization,
}

impl Error {
    /// Errors raised by the size limits rather than by bad data.
    pub fn is_guard_rail(&self) -> bool {
        matches!(self, Error::RankTooLarge { .. } | Error::TooManySimples { .. } | Error::GraphTooLarge { .. })
    }
}
