use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("factor index {index} out of range 1..={n}")]
    IndexOutOfRange { index: u32, n: u32 },

    #[error("divisor label {label} out of range 1..={rho}")]
    DivisorOutOfRange { label: u32, rho: u32 },

    #[error("tau and delta need two distinct indices, got ({0},{0})")]
    DiagonalIndex(u32),

    #[error("invalid ring parameters: {0}")]
    InvalidParams(String),

    #[error("operands belong to rings with different parameters")]
    ParamsMismatch,

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("codegree {m} out of range 0..={max}")]
    CodegreeOutOfRange { m: u32, max: u32 },

    #[error("pairing degree mismatch: {lhs} + {rhs} != {total}")]
    PairingDegreeMismatch { lhs: u32, rhs: u32, total: u32 },

    #[error("expected codegree {expected}, found {found}")]
    WrongDegree { expected: u32, found: u32 },

    #[error("ground set of odd size {0} has no perfect matching")]
    OddGroundSet(u32),

    #[error("matchings live on different ground sets")]
    GroundSetMismatch,

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("row of odd size {0} admits no matching sum")]
    OddRowSize(u32),

    #[error("vector has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("eigencheck needs a nonzero vector")]
    ZeroVector,

    #[error("kimura relation needs x to be a positive integer, got {0}")]
    NonIntegerRank(String),

    #[error("syntax error at byte {offset}: expected {expected}")]
    Parse { offset: usize, expected: String },

    #[error("at byte {offset}: {source}")]
    Eval { offset: usize, source: Box<Error> },

    #[error("resource bound exceeded: {0}")]
    ResourceExceeded(String),
}
