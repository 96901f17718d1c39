use thiserror::Error;

use crate::graph::graph6::Graph6Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph6: {0}")]
    Graph6(#[from] Graph6Error),

    #[error("invalid edge list: {0}")]
    EdgeList(String),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("{what}: size {size} exceeds cap {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("eigensolver did not converge for matrix of order {n}")]
    EigenSolver { n: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("vertex {0} is not controllable")]
    NotControllable(usize),

    #[error("values are not roots of the characteristic polynomial: {0}")]
    NotRoots(String),

    #[error("event no longer verifies: fidelity {fidelity} below threshold {threshold}")]
    StaleEvent { fidelity: f64, threshold: f64 },

    /// Two independent routes disagreed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
