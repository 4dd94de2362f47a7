use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),

    #[error("no vertex with label {0}")]
    UnknownLabel(String),

    #[error("label {label} matches {count} vertices; give a level to disambiguate")]
    AmbiguousLabel { label: String, count: usize },

    #[error("level {requested} requested but only built through level {available}")]
    Horizon { requested: usize, available: usize },

    #[error("unknown family `{0}` (expected chain, young, walled_young or doubled_young)")]
    UnknownFamily(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid path at step {step}: {reason}")]
    InvalidPath { step: usize, reason: String },

    #[error("invalid walk at step {step}: {reason}")]
    InvalidWalk { step: usize, reason: String },

    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<u32>),

    #[error("branching ratios known through a_{available}, need a_{needed}")]
    InsufficientRatios { needed: usize, available: usize },

    #[error("{0}")]
    Domain(String),

    #[error("vertex {0} lies on the embedded base graph; the off-diagonal decay bound does not apply")]
    DiagonalVertex(String),

    #[error("the vanishing criterion does not hold for this family: {0}")]
    CriterionNotSatisfied(String),

    #[error("transition weights out of {vertex} do not sum to one ({sum})")]
    NotPlancherel { vertex: String, sum: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
