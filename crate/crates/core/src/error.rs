use thiserror::Error;

/// Errors raised by the library.
///
/// Every variant is a domain error (bad input or a mathematically invalid
/// object); `Internal` is reserved for broken invariants of our own.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("letter index {index} out of range for {strands} strands")]
    LetterOutOfRange { index: usize, strands: usize },

    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("parabolic size {k} exceeds strand count {n}")]
    ParabolicTooLarge { k: usize, n: usize },

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("automorphism group in degree {degree} is infinite; cosets cannot be enumerated")]
    InfiniteCoset { degree: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("boundary maps do not compose to zero in degree {degree}")]
    ChainCondition { degree: i64 },

    #[error("empty window: {0}")]
    EmptyWindow(String),

    #[error("invalid coefficient system: {0}")]
    InvalidSystem(String),

    #[error("invalid retraction: {0}")]
    InvalidRetraction(String),

    #[error("no retraction supplied for cokernel level {level}")]
    MissingRetraction { level: usize },

    #[error("intertwiner space has dimension {dim} (expected 1) in degree {degree}")]
    IntertwinerDimension { degree: usize, dim: usize },

    #[error("relator {index} is not killed by the representation")]
    RelatorNotKilled { index: usize },

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("partition {partition} cannot be padded to {n} (needs n >= {needed})")]
    PadBelowThreshold { partition: String, n: usize, needed: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid range query: {0}")]
    InvalidQuery(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }

    /// Stable machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::StrandMismatch { .. } => "strand-mismatch",
            Error::LetterOutOfRange { .. } => "letter-out-of-range",
            Error::GeneratorOutOfRange { .. } => "generator-out-of-range",
            Error::ParabolicTooLarge { .. } => "parabolic-too-large",
            Error::DegreeMismatch(_) => "degree-mismatch",
            Error::InfiniteCoset { .. } => "infinite-coset",
            Error::IndexOutOfRange(_) => "index-out-of-range",
            Error::ChainCondition { .. } => "chain-condition",
            Error::EmptyWindow(_) => "empty-window",
            Error::InvalidSystem(_) => "invalid-system",
            Error::InvalidRetraction(_) => "invalid-retraction",
            Error::MissingRetraction { .. } => "missing-retraction",
            Error::IntertwinerDimension { .. } => "intertwiner-dimension",
            Error::RelatorNotKilled { .. } => "relator-not-killed",
            Error::InvalidRepresentation(_) => "invalid-representation",
            Error::PadBelowThreshold { .. } => "pad-below-threshold",
            Error::InvalidPartition(_) => "invalid-partition",
            Error::InvalidQuery(_) => "invalid-query",
            Error::Parse(_) => "parse",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
