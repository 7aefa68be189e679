use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("invalid cycle notation {input:?}: {reason}")]
    CycleSyntax { input: String, reason: String },

    #[error("generator {0:?} is not a permutation of the stated degree")]
    NotAPermutation(String),

    #[error("group order exceeds the configured cap of {cap}")]
    OrderCapExceeded { cap: usize },

    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    #[error("element index {index} out of range for group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("empty commutator word")]
    EmptyWord,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subgroup is not proper")]
    NotProper,

    #[error("subgroup is not nilpotent")]
    NotNilpotent,

    #[error("{p} is not a prime dividing the group order {order}")]
    PrimeDoesNotDivide { p: usize, order: usize },

    #[error("commutator condition needs {work} evaluations, above the cap of {cap}")]
    Infeasible { work: u128, cap: u128 },

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("element set belongs to a different group")]
    ForeignSet,

    #[error("cannot resolve element {0:?}")]
    UnknownElement(String),

    #[error("unknown group {0:?}")]
    UnknownGroup(String),

    #[error("corpus entry {name}: {reason}")]
    CorpusMismatch { name: String, reason: String },

    #[error("cache entry {path} is corrupt: {reason}")]
    CorruptCache { path: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;
