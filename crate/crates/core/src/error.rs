use thiserror::Error;

/// Errors raised by the constructions in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("unsupported root system `{0}`")]
    UnsupportedType(String),
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("weight {0:?} is not minuscule")]
    NotMinuscule(Vec<i64>),
    #[error("relation failure: {0}")]
    RelationFailure(String),
    #[error("generators do not act faithfully: group order {found}, expected {expected}")]
    NotFaithful { found: u128, expected: u128 },
    #[error("vector has support outside grade {expected}")]
    WrongGrade { expected: usize },
    #[error("the module has no degree-3 component")]
    NoCubic,
    #[error("the torus parameter must be nonzero")]
    ZeroScale,
    #[error("the origin is excluded")]
    ZeroVector,
    #[error("expected a class of kind {expected}, found {found}")]
    WrongKind { expected: String, found: String },
    #[error("class-to-weight dictionary: {0}")]
    Dictionary(String),
    #[error("unsupported number of blown-up points {0} (expected 4..=7)")]
    UnsupportedPoints(usize),
    #[error("adjacency test requires two distinct vertices")]
    SameVertex,
    #[error("removal set must be a proper subset of the orbit")]
    RemovalTooLarge,
}

pub type Result<T> = std::result::Result<T, Error>;
