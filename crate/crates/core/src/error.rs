use thiserror::Error;

/// Errors raised anywhere in the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),

    #[error("GEXF error: {0}")]
    Gexf(String),

    #[error("missing column `{column}` in {file} header")]
    MissingHeader { file: &'static str, column: &'static str },

    #[error("edge references unknown node id `{0}`")]
    UnknownNode(String),

    #[error("duplicate node id `{0}`")]
    DuplicateNode(String),

    #[error("self-loop on node `{0}` is not allowed")]
    SelfLoop(String),

    #[error("invalid edge weight `{0}`: weights must be positive finite numbers")]
    InvalidWeight(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph too small: need at least {required} nodes, got {actual}")]
    GraphTooSmall { required: usize, actual: usize },

    #[error("alias `{alias}` is assigned to both `{first}` and `{second}`")]
    AliasConflict {
        alias: String,
        first: String,
        second: String,
    },

    #[error("eigenvalue {0} lies outside [0, 2]")]
    EigenvalueOutOfRange(f64),

    #[error("invalid dataset: {0}")]
    InvalidData(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
