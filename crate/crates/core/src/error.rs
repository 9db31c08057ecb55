use alloc::string::String;

/// Errors reported by the analysis kernels.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("a graph needs at least one node")]
    EmptyGraph,

    #[error("invalid edge ({i}, {j}): {reason}")]
    InvalidEdge {
        i: usize,
        j: usize,
        reason: &'static str,
    },

    #[error("duplicate edge ({i}, {j})")]
    DuplicateEdge { i: usize, j: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not symmetric (max deviation {deviation:e})")]
    NotSymmetric { deviation: f64 },

    #[error("matrix is not positive definite (min eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("{routine} did not converge after {iterations} iterations")]
    NoConvergence {
        routine: &'static str,
        iterations: usize,
    },

    #[error("graphs not edge-isolated")]
    NotEdgeIsolated,

    #[error("invalid parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("node {node} out of range 1..={q}")]
    NodeOutOfRange { node: usize, q: usize },

    #[error("invalid coupler #{index}: {reason}")]
    InvalidCoupler { index: usize, reason: &'static str },

    #[error("duplicate {kind} coupler between nodes {i} and {j}")]
    DuplicateCoupler { kind: char, i: usize, j: usize },

    #[error("state became non-finite at t = {t} (dt = {dt} is too large)")]
    Divergence { t: f64, dt: f64 },

    #[error("horizon {t_end} s is shorter than the required {required} s")]
    HorizonTooShort { t_end: f64, required: f64 },

    #[error("inconsistent verdicts: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
