use thiserror::Error;

/// Errors produced by instance construction, the solvers and the file layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid point ({x}, {y}): coordinates must be finite and within ±{bound}")]
    InvalidPoint { x: f64, y: f64, bound: f64 },

    #[error("instance has no points")]
    EmptyInstance,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("multigraph is not eulerian: {0}")]
    NotEulerian(String),

    #[error("{what} = {value} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },

    #[error("perfect matching needs an even number of nodes, got {0}")]
    Parity(usize),

    #[error("exact oracle infeasible: {0}")]
    InfeasibleOracle(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("generation failed: {0}")]
    Generation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
