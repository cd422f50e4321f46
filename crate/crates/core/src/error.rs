use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph is not connected (vertex {0} unreachable from vertex 0)")]
    NotConnected(usize),

    #[error("price of vertex {vertex} is {price}; prices must be at least 2")]
    PriceBelowTwo { vertex: usize, price: u64 },

    #[error("bad edge ({0}, {1}): {2}")]
    BadEdge(usize, usize, &'static str),

    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("expected {expected} prices, got {got}")]
    PriceCount { expected: usize, got: usize },

    #[error("vertex {vertex} holds {have} pebbles but moving off it costs {price}")]
    InsufficientPebbles {
        vertex: usize,
        have: u64,
        price: u64,
    },

    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),

    #[error("length mismatch: expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid target set: {0}")]
    BadTargets(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("graph is not complete")]
    NotComplete,

    #[error("graph is not a path")]
    NotPath,

    #[error("graph is not a star")]
    NotStar,

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
