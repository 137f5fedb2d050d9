use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    InvalidVertex { vertex: usize, vertex_count: usize },

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("{what} does not belong to this graph")]
    OwnerMismatch { what: &'static str },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("edge weight {0} is not strictly positive")]
    NonPositiveWeight(String),

    #[error("cannot parse weight {0:?}")]
    ParseWeight(String),

    #[error("vertex sequence is not a path in the graph: {0}")]
    NotAPath(String),

    #[error("vertex map does not match the graphs: {0}")]
    MapMismatch(String),

    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("search budget of {0} node expansions exceeded")]
    BudgetExceeded(u64),

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
