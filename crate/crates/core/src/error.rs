use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("edge {edge}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("edge {edge}: weight is not finite")]
    NonFiniteWeight { edge: usize },
    #[error("edge {edge}: time must be finite and positive")]
    NonPositiveTime { edge: usize },
    #[error("vertex {0} out of range")]
    NoSuchVertex(usize),
    #[error("a path needs at least one edge")]
    EmptyPath,
    #[error("edge {edge} does not continue the path")]
    BrokenPath { edge: usize },
    #[error("no minimal {hops}-hop path ends at vertex {vertex}")]
    NotMinimal { vertex: usize, hops: usize },
    #[error("depth parameter d = {d} must lie in [1, {n}]")]
    InvalidDepth { d: usize, n: usize },
    #[error("hop bound must be at least 1")]
    ZeroHops,
    #[error("graph has {n} vertices; exhaustive enumeration is limited to {max}")]
    TooLarge { n: usize, max: usize },
    #[error("matrix dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("graph has no directed cycle")]
    NoCycle,
    #[error("time vector has {got} entries, graph has {m} edges")]
    TimeCount { got: usize, m: usize },
    #[error("phase scopes are unbalanced: {0}")]
    UnbalancedPhase(String),
    #[error("exact arithmetic needs integer weights and times of magnitude at most {limit}")]
    NotExact { limit: i64 },
    #[error("rounding lost the optimum; no candidate carries a nonpositive cycle")]
    PrecisionLoss,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
