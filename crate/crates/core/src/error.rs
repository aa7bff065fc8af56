use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid objective set: {0}")]
    InvalidObjectiveSet(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("perturbation needs at least 4 jobs, instance has {jobs}")]
    PerturbationUnavailable { jobs: usize },

    #[error("archive is empty")]
    EmptyArchive,

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),

    #[error("exhaustive enumeration refused: {jobs} jobs exceeds the limit of {limit}")]
    EnumerationRefused { jobs: usize, limit: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("run failed for instance {instance}, algorithm {algorithm}, seed {seed}: {source}")]
    Run {
        instance: String,
        algorithm: String,
        seed: u64,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
