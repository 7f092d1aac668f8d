use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("state {state} out of range for node {node} with arity {arity}")]
    StateOutOfRange { node: usize, state: usize, arity: usize },

    #[error("model is not in canonical form: {0}")]
    NotCanonical(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("model has {configs} configurations, above the exact-inference limit of {limit}")]
    TooManyConfigurations { configs: u128, limit: u128 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no sample observes all of {nodes:?}")]
    InsufficientCoverage { nodes: Vec<usize> },

    #[error("query of {requested} nodes exceeds capacity {capacity}")]
    QueryCapacity { requested: usize, capacity: usize },

    #[error("sample source exhausted after {consumed} samples")]
    SourceExhausted { consumed: usize },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("infeasible generator spec: {0}")]
    Infeasible(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
