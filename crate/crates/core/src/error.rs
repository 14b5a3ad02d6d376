use thiserror::Error;

use crate::finding::Finding;
use crate::structures::Vertex;

/// Errors raised by construction, parsing and the verification operations.
///
/// Theorem violations are not ordinary errors: they travel as
/// [`Error::Finding`] so that callers can tell a falsified identity apart
/// from bad input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("directed cycle through vertex {0}")]
    CycleDetected(Vertex),
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("label {0} is used twice")]
    LabelCollision(Vertex),
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex labels must be positive, got 0")]
    ZeroLabel,
    #[error("too many vertices: {0} (at most 64 are supported)")]
    TooManyVertices(usize),
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("sequence is not an ordering of the vertex set: {0}")]
    NotAnOrdering(String),
    #[error("ordering is not a linear extension of the digraph minus {0}")]
    NotAnExtension(Vertex),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("polynomial is not in the integer span of C(x+i, {degree})")]
    NotRepresentable { degree: usize },
    #[error("coefficient vector is not divisible by (z-1)^2")]
    NotFactorable,
    #[error("interpolation data disagrees with the degree-{bound} fit at x = {at}")]
    InconsistentData { bound: usize, at: String },
    #[error("need at least {needed} distinct points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("vertex {0} is not a turning vertex")]
    NotTurning(Vertex),
    #[error("not a sink-elimination ordering: {0}")]
    NotSinkElimination(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("graph is not a tree")]
    NotATree,
    #[error("tree is not a caterpillar (its non-leaf vertices do not induce a path)")]
    NotCaterpillar,
    #[error("limit exceeded: {what} = {value} > {limit}")]
    LimitExceeded { what: String, value: usize, limit: usize },

    #[error("theorem violation: {0}")]
    Finding(Box<Finding>),
}

impl Error {
    /// Exit code used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Finding(_) => 1,
            Error::Parse { .. }
            | Error::CycleDetected(_)
            | Error::UnknownVertex(_)
            | Error::LabelCollision(_)
            | Error::SelfLoop(_)
            | Error::ZeroLabel
            | Error::TooManyVertices(_)
            | Error::NotAPartialOrder(_)
            | Error::NotAnOrdering(_) => 2,
            _ => 3,
        }
    }

    pub fn as_finding(&self) -> Option<&Finding> {
        match self {
            Error::Finding(f) => Some(f),
            _ => None,
        }
    }
}

impl From<Finding> for Error {
    fn from(f: Finding) -> Self {
        Error::Finding(Box::new(f))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
