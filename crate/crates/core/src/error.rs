use std::path::PathBuf;

/// Errors produced by the soft VSM engine.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("empty corpus")]
    EmptyCorpus,

    #[error("total document count must be positive")]
    ZeroTotalDocs,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("embedding for term {term:?} has dimension {found}, expected {expected}")]
    EmbeddingDimension { term: String, expected: usize, found: usize },

    #[error("invalid vector: {0}")]
    InvalidVector(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("matrix not positive definite (pivot at column {column})")]
    NotPositiveDefinite { column: usize },

    #[error("zero-norm document: {doc}")]
    ZeroNormDocument { doc: String },

    #[error("zero query vector")]
    ZeroQuery,

    #[error("augmentation undefined: normalized document has squared norm {norm_sq}")]
    AugmentationUndefined { norm_sq: f64 },

    #[error("index was built with a different similarity matrix or weights; rebuild it")]
    StaleIndex,

    #[error("{path}:{line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn parse(path: impl Into<PathBuf>, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { path: path.into(), line, msg: msg.into() }
    }
}
