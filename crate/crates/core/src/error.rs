use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Counters reported by every budgeted search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub refusals: u64,
}

/// A search that stopped without an answer. Never a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refusal {
    pub reason: String,
    pub stats: SearchStats,
}

impl std::fmt::Display for Refusal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (after {} search nodes)", self.reason, self.stats.nodes)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {v} out of range for graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("invalid labels: {0}")]
    Labels(String),
    #[error("boundary lengths differ: {0} vs {1}")]
    IncompatibleBoundary(usize, usize),
    #[error("invalid boundary: {0}")]
    Boundary(String),
    #[error("invalid separation: {0}")]
    Separation(String),
    #[error("graph6 decode error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("cycle is not facial; apex graph is non-planar (Kuratowski evidence: {evidence:?})")]
    NotFacial { evidence: Vec<(usize, usize)> },
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("malformed embedding at vertex {vertex}: {reason}")]
    Embedding { vertex: usize, reason: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid certificate: {0}")]
    Certificate(String),
    #[error("antichain not in H-: {0}")]
    NotInHMinus(String),
    #[error("refused: {0}")]
    Refused(Refusal),
}

impl From<Refusal> for Error {
    fn from(r: Refusal) -> Self {
        Error::Refused(r)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
