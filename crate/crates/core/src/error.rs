use std::time::Duration;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph is disconnected (vertex {unreachable} unreachable)")]
    Disconnected { unreachable: usize },
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    DegreeNotThree { vertex: usize, degree: usize },
    #[error("instance of size {size} exceeds the oracle bound {bound}")]
    OracleBound { size: usize, bound: usize },
    #[error("time budget of {0:?} exhausted")]
    BudgetExhausted(Duration),
    #[error("malformed formula: {0}")]
    MalformedFormula(String),
    #[error("assignment is not 1-in-3: clause {clause} has {true_count} true variables")]
    NotOneInThree { clause: usize, true_count: usize },
    #[error("partition is not a matching cut: {0}")]
    NotMatchingCut(String),
    #[error("structural invariant violated: {0}")]
    Invariant(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
