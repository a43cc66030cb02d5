use thiserror::Error;

use crate::freeness::{Configuration, FreenessConstraint};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge {index} {edge:?}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange {
        index: usize,
        edge: Vec<u64>,
        vertex: u64,
        n: usize,
    },

    #[error("edge {index} {edge:?}: expected {expected} distinct vertices, found {found}")]
    WrongEdgeSize {
        index: usize,
        edge: Vec<u64>,
        expected: usize,
        found: usize,
    },

    #[error("invalid uniformity r = {0}")]
    InvalidUniformity(usize),

    #[error("subset of size {size} has no codegree in an r-graph with r = {r}")]
    SubsetTooLarge { size: usize, r: usize },

    #[error("vertex set {0:?} is not strictly increasing")]
    UnsortedSubset(Vec<u32>),

    #[error("unknown edge id {id} (hypergraph has {count} edges)")]
    UnknownEdge { id: usize, count: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },

    #[error("constraint {constraint} violated by edges {:?}", configuration.edge_ids)]
    ConstraintViolated {
        constraint: FreenessConstraint,
        configuration: Configuration,
    },

    #[error("configuration is not a bad configuration: {0}")]
    NotBadConfiguration(String),
}
