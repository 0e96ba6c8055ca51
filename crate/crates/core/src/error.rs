use std::fmt;

use crate::model::RequestId;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A node id outside `0..node_count`.
    NodeOutOfRange {
        node: usize,
        node_count: usize,
    },
    NonPositiveWeight {
        u: usize,
        v: usize,
        weight: Rational,
    },
    Disconnected,
    /// Tree flag given for an edge set that is not a spanning tree.
    NotATree(String),
    /// The operation requires a tree metric.
    TreeRequired,
    UnknownRequest(RequestId),
    DuplicateRequest(RequestId),
    InvalidWindow {
        request: RequestId,
        reason: String,
    },
    InvalidParameter(String),
    /// Oracle or exact solver asked to work beyond its configured budget.
    BudgetExceeded(String),
    /// A solver produced a schedule its own verifier rejects.
    Infeasible(String),
    Parse {
        line: usize,
        message: String,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NodeOutOfRange { node, node_count } => {
                write!(f, "node {node} out of range (instance has {node_count} nodes)")
            }
            Error::NonPositiveWeight { u, v, weight } => {
                write!(f, "edge {u}-{v} has non-positive weight {weight}")
            }
            Error::Disconnected => write!(f, "edge set is disconnected"),
            Error::NotATree(why) => write!(f, "not a tree: {why}"),
            Error::TreeRequired => write!(f, "operation requires a tree metric"),
            Error::UnknownRequest(id) => write!(f, "unknown request {id}"),
            Error::DuplicateRequest(id) => write!(f, "duplicate request {id}"),
            Error::InvalidWindow { request, reason } => {
                write!(f, "request {request}: {reason}")
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::BudgetExceeded(msg) => write!(f, "budget exceeded: {msg}"),
            Error::Infeasible(msg) => write!(f, "infeasible schedule: {msg}"),
            Error::Parse { line, message } => write!(f, "line {line}: {message}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
