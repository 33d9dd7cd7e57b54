//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex index {index} out of range for graph on {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("graph6 parse error at byte {offset}: {msg}")]
    Graph6Parse { offset: usize, msg: String },

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("census budget exceeded at k = {limiting_k} ({spent} of {budget} steps)")]
    CensusBudget {
        limiting_k: u64,
        spent: u64,
        budget: u64,
    },

    #[error("canonization gate exceeded: component of order {order} > limit {limit}")]
    CanonGate { order: usize, limit: usize },

    #[error("canonization search budget exceeded ({nodes} nodes)")]
    CanonBudget { nodes: u64 },

    #[error("embedding gate exceeded: pattern order {order} > limit {limit}")]
    EmbedGate { order: usize, limit: usize },

    #[error("not embeddable: {0}")]
    NotEmbeddable(String),

    #[error("empty input: {0}")]
    Empty(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Budget refusals get a dedicated exit code at the CLI.
    pub fn is_budget_refusal(&self) -> bool {
        matches!(
            self,
            Error::CensusBudget { .. } | Error::CanonGate { .. } | Error::CanonBudget { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
