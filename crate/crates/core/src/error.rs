use thiserror::Error;

use crate::grid::Vertex;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("search budget of {node_cap} nodes exceeded while deciding target {target}")]
    BudgetExceeded { target: Vertex, node_cap: u64 },

    #[error("grids do not match: {0}")]
    GridMismatch(String),

    #[error("instance too large: {0}")]
    ScaleLimit(String),

    #[error("search exhausted: {0}")]
    SearchFailed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
