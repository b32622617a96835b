use thiserror::Error;

/// Errors produced while reading or validating a temporal graph.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown vertex {vertex} (graph has {n} vertices)")]
    UnknownVertex { line: usize, vertex: u64, n: usize },
    #[error("missing `{0}` declaration")]
    Missing(&'static str),
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: u32 },
    #[error("line {line}: survival probability {p} outside [0, 1]")]
    Probability { line: usize, p: f64 },
    #[error("line {line}: time label must be at least 1")]
    TimeLabel { line: usize },
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCount { declared: usize, found: usize },
    #[error("source and terminal are the same vertex {0}")]
    SourceIsTerminal(u32),
    #[error("edge order is not a permutation of the {0} edges")]
    BadOrder(usize),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DdError {
    #[error("node label {label} is not above child label {child}")]
    LabelOrder { label: u32, child: u32 },
    #[error("family has more than {limit} members")]
    LimitExceeded { limit: usize },
    #[error("probability {value} for variable {var} outside [0, 1]")]
    Probability { var: usize, value: String },
    #[error("expected {expected} probabilities, got {got}")]
    ProbabilityCount { expected: usize, got: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("instance has {m} edges, brute force is limited to {limit}")]
    TooLarge { m: usize, limit: usize },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Dd(#[from] DdError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("timed out after {0:?}")]
    Timeout(std::time::Duration),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
