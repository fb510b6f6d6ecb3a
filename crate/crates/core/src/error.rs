use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("loop on vertex `{0}` is not allowed")]
    Loop(String),
    #[error("edge {0}-{1} is not an edge of the graph")]
    MissingEdge(String, String),
    #[error("cannot erase `{vertex}`: degree is {degree}, expected 2")]
    NotDegreeTwo { vertex: String, degree: usize },
    #[error("vertex set is not stable: `{0}` and `{1}` are adjacent")]
    NotStable(String, String),
    #[error("graph has {size} vertices, limit is {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("operation needs a nonempty graph")]
    EmptyGraph,
    #[error("parameter n = {0} is out of range (need n >= 2)")]
    SizeOutOfRange(usize),
    #[error("{what} = {value} is outside the supported range {min}..={max}")]
    OutOfRange { what: String, value: usize, min: usize, max: usize },
    #[error("duplicate vertex name `{0}` in term")]
    DuplicateName(String),
    #[error("add-edges with equal labels {0} and {0}")]
    SelfLabelAdd(u32),
    #[error("label 0 is not allowed (labels are positive)")]
    ZeroLabel,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("solver budget exceeded ({what}); best lower bound {lower_bound}")]
    BudgetExceeded { what: String, lower_bound: usize },
    #[error("solver witness failed verification: {0}")]
    WitnessMismatch(String),
    #[error("invalid script step {index}: {msg}")]
    InvalidStep { index: usize, msg: String },
    #[error("coloring error: {0}")]
    Coloring(String),
    #[error("naming mismatch: {0}")]
    Naming(String),
    #[error("checkpoint error: {0}")]
    Checkpoint(String),
}
