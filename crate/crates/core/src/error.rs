use thiserror::Error;

use crate::graph::{Edge, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("unknown edge {0}")]
    UnknownEdge(Edge),
    #[error("terminals must be distinct (got {0} twice)")]
    IdenticalTerminals(Vertex),
    #[error("terminals {0} and {1} are adjacent")]
    AdjacentTerminals(Vertex, Vertex),
    #[error("vertex set contains terminal {0}")]
    TerminalInSet(Vertex),
    #[error("graph has {actual} vertices, limit for this operation is {limit}")]
    TooLarge { actual: usize, limit: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid path {0}")]
    InvalidPath(String),
    #[error("paths {0} and {1} share an interior vertex")]
    PathsIntersect(usize, usize),
    #[error("connectivity dropped from {before} to {after} after contracting {x}-{y}")]
    KappaDroppedAfterContraction {
        x: Vertex,
        y: Vertex,
        before: usize,
        after: usize,
    },
    #[error("lifting paths through contracted vertex {y} failed: {reason}")]
    LiftFailed { y: Vertex, reason: String },
    #[error("exhaustive enumeration capped at {cap} vertices, got {n}")]
    CapExceeded { n: usize, cap: usize },
}
