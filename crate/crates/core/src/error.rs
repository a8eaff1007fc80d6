use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("action space must have at least one vertex")]
    EmptySpace,
    #[error("sub-action set of vertex {vertex} is empty")]
    EmptySubActionSet { vertex: usize },
    #[error("action space size overflows usize")]
    SpaceOverflow,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("flat index {index} out of range for space of size {size}")]
    InvalidIndex { index: usize, size: usize },
    #[error("hyperedge order {order} out of range 1..={n_vertices}")]
    InvalidOrder { order: usize, n_vertices: usize },
    #[error("hypergraph rank {rank} out of range 1..={n_vertices}")]
    InvalidRank { rank: usize, n_vertices: usize },
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("forward cache does not belong to this network")]
    CacheMismatch,
    #[error("empty sampling range [{lo}, {hi}]")]
    Range { lo: f64, hi: f64 },
    #[error("unsupported model structure: {0}")]
    UnsupportedStructure(String),
    #[error("incompatible checkpoint: {0}")]
    IncompatibleCheckpoint(String),
    #[error("malformed checkpoint: {0}")]
    Checkpoint(String),
    #[error("normalization undefined: {0}")]
    UndefinedNormalization(String),
    #[error("episode already finished; call reset first")]
    EpisodeFinished,
    #[error("not available: {0}")]
    NotAvailable(String),
    #[error("invalid config field `{field}`: {reason}")]
    Config { field: String, reason: String },
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn config(field: &str, reason: impl Into<String>) -> Self {
        Error::Config {
            field: field.to_string(),
            reason: reason.into(),
        }
    }
}
