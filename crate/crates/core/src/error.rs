use thiserror::Error;

use crate::lattice::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity {0} is out of range (expected 1..=16)")]
    BadArity(usize),

    #[error("arity mismatch: expected {expected}, got {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("mask {value:#x} does not fit in {k} bits")]
    MaskOutOfRange { value: u32, k: usize },

    #[error("invalid mask {text:?}: {reason}")]
    InvalidMask { text: String, reason: MaskSyntax },

    #[error("weight at position {index} is {value}; multiplicities must be at least 1")]
    ZeroWeight { index: usize, value: u64 },

    #[error("weight at position {index} exceeds 2^40")]
    WeightTooLarge { index: usize },

    #[error("interval bottom must be nonempty")]
    EmptyBottom,

    #[error("bottom {bottom} is not contained in top {top}")]
    BottomNotInTop { bottom: String, top: String },

    #[error("invalid interval text {0:?}")]
    IntervalSyntax(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(ValidationReport),

    #[error("singleton {0} is not the bottom of any interval")]
    SingletonNotBottom(String),

    #[error("no closed form known for k = {0} (use the exact solver)")]
    NoClosedForm(usize),

    #[error("{0}")]
    Domain(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("node limit of {limit} reached at threshold {threshold} after {nodes} nodes (value is at most {upper})")]
    NodeLimit { limit: u64, threshold: u64, nodes: u64, upper: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaskSyntax {
    InvalidCharacter(char),
    WrongLength { expected: usize, found: usize },
}

impl std::fmt::Display for MaskSyntax {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MaskSyntax::InvalidCharacter(c) => write!(f, "invalid character {c:?}"),
            MaskSyntax::WrongLength { expected, found } => {
                write!(f, "wrong length (expected {expected}, found {found})")
            }
        }
    }
}
