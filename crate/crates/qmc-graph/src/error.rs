use thiserror::Error;

/// Errors produced by graph construction, parsing and the exact solvers.
#[derive(Debug, Error)]
pub enum GraphError {
    #[error("invalid edge ({0}, {1}): endpoints must satisfy i < j < n")]
    InvalidEdge(usize, usize),
    #[error("invalid edge weight {2} on ({0}, {1}): weights must be positive and finite")]
    InvalidWeight(usize, usize, f64),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("malformed graph6 header byte {0:#x}")]
    Graph6Header(u8),
    #[error("graph6 payload truncated: expected {expected} data bytes, found {found}")]
    Graph6Truncated { expected: usize, found: usize },
    #[error("graph6 byte {0:#x} outside the printable range 63..=126")]
    Graph6Byte(u8),
    #[error("graph6 long form (n > 62) is not supported")]
    Graph6LongForm,
    #[error("operation undefined for fewer than {min} vertices (got {got})")]
    TooSmall { min: usize, got: usize },
    #[error("instance too large for exact solver: {reason}")]
    InstanceTooLarge { reason: String },
    #[error("dimension mismatch: expected {expected} values, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0}")]
    InvalidInput(String),
}
