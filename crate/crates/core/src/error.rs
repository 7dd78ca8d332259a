use thiserror::Error;

/// Which sample-table property failed validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationKind {
    NonFinite,
    Negative,
    Decreasing,
    Convex,
}

impl std::fmt::Display for ValidationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ValidationKind::NonFinite => "non-finite sample",
            ValidationKind::Negative => "negative sample",
            ValidationKind::Decreasing => "not nondecreasing",
            ValidationKind::Convex => "not concave",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("penalty table fails validation at index {index}: {kind}")]
    Validation { index: usize, kind: ValidationKind },

    #[error("index {index} outside 0..={max}")]
    Range { index: usize, max: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("cap {cap} exceeds half the hyperedge size {size}")]
    CapTooLarge { cap: usize, size: usize },

    #[error("instance has {nodes} nodes, brute force supports at most {max}")]
    TooLarge { nodes: usize, max: usize },

    #[error("scaled capacity {value} exceeds the integer range")]
    Overflow { value: f64 },

    #[error("hyperedge {edge}: {reason}")]
    InvalidHyperedge { edge: usize, reason: String },

    #[error("node {node}: {reason}")]
    InvalidUnary { node: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
