use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} has color {color}, expected a color in 1..={num_colors}")]
    ColorOutOfRange {
        vertex: Vertex,
        color: u32,
        num_colors: u32,
    },

    #[error("coloring covers {got} vertices but the graph has {expected}")]
    ColoringLength { expected: usize, got: usize },

    #[error("coloring is missing vertex {0}")]
    MissingVertex(Vertex),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search space {required} exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("parameter search exceeded cap {cap}")]
    CapExceeded { cap: usize },

    #[error("instance would have {predicted} vertices, above the cap of {cap}")]
    SizeCap { predicted: u128, cap: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
