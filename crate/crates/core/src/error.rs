use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex subset is empty")]
    EmptySubset,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("pattern on {pattern} vertices is larger than host on {host} vertices")]
    PatternTooLarge { pattern: usize, host: usize },
    #[error("order {n} exceeds the supported maximum {max} for {what}")]
    OrderTooLarge { n: usize, max: usize, what: &'static str },
    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("degenerate interval: lower bound is not below upper bound")]
    DegenerateInterval,
    #[error("extension type contains a zero entry at position {0}")]
    ZeroEntry(usize),
    #[error("invalid star parameters: {0}")]
    InvalidParams(String),
    #[error("parameters {0} lie outside the one-positive-eigenvalue family")]
    OutsideFamily(String),
    #[error("sign of an eigenvalue within {guard:e} of zero cannot be decided for order {n}")]
    Undecidable { n: usize, guard: f64 },
    #[error("malformed graph6: {0}")]
    Graph6(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
