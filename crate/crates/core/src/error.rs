use thiserror::Error;

use crate::recognition::PatternWitness;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("loop arc ({vertex}, {vertex}) is not allowed")]
    LoopArc { vertex: usize },

    #[error("duplicate arc ({tail}, {head})")]
    DuplicateArc { tail: usize, head: usize },

    #[error("vertex {vertex} out of range for a digraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("arc ({tail}, {head}) is not present")]
    ArcNotPresent { tail: usize, head: usize },

    #[error("invalid size {size}: {reason}")]
    InvalidSize { size: usize, reason: &'static str },

    #[error("invalid star specification (x={x}, y={y}, c={c}): {reason}")]
    InvalidSpec {
        x: usize,
        y: usize,
        c: usize,
        reason: &'static str,
    },

    #[error("not a line digraph: {0}")]
    NotLineDigraph(PatternWitness),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("{what} = {value} exceeds the supported limit of {limit}")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("root with {m} arcs reaches phi = {found}, above the closed-form maximum {bound}")]
    BoundViolated { m: usize, found: u64, bound: u64 },

    #[error("unknown {kind} `{name}`")]
    UnknownStrategy { kind: &'static str, name: String },
}
