use alloc::string::String;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("graph has a loop at vertex {0}")]
    LoopEdge(usize),
    #[error("root system did not close below height {0}; not of finite type")]
    NotFiniteType(usize),
    #[error("weight is not dominant")]
    NotDominant,
    #[error("algebra dimension has not stabilized at degree cap {0}")]
    CapExceeded(usize),
    #[error("preprojective relation violated at vertex {0}")]
    RelationViolated(usize),
    #[error("module is not nilpotent")]
    NotNilpotent,
    #[error("modules live over different fields")]
    FieldMismatch,
    #[error("subspace is not stable under the arrows")]
    NotStable,
    #[error("dimension vector outside the catalog cutoff")]
    CatalogMissing,
    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),
    #[error("catalog cross-check failed: {0}")]
    LiftMismatch(String),
    #[error("module does not embed into the injective module")]
    NoEmbedding,
    #[error("point counts are not polynomial: {0}")]
    NonPolynomialCount(String),
    #[error("could not classify module: {0}")]
    ClassMatchFailure(String),
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("rank deficient: rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: u64 },
    #[error("element is not in the span of the word basis")]
    NotInSpan,
    #[error("instance too large for brute force: {0}")]
    TooLarge(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
