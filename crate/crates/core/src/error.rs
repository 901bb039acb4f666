use thiserror::Error;

/// Crate-wide error type. Every fallible public operation returns this.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix entries are not all integers")]
    NonInteger,

    #[error("columns are linearly dependent")]
    DependentColumns,

    #[error("box vectors are linearly dependent")]
    DependentBox,

    #[error("rows do not form a basis (linearly dependent)")]
    DependentRows,

    #[error("unsupported root system {0}")]
    UnsupportedSystem(String),

    #[error("invalid root system id: {0}")]
    InvalidSystemId(String),

    #[error("vector is not in the weight lattice")]
    NotInWeightLattice,

    #[error("vector is not in the defining subspace of the realization")]
    NotInSubspace,

    #[error("weight belongs to {expected}, got a vector for {got}")]
    SystemMismatch { expected: String, got: String },

    #[error("orbit size exceeds cap {cap} (at least {reached} elements)")]
    OrbitCapExceeded { cap: usize, reached: usize },

    #[error("enumeration size exceeds cap {cap} (at least {reached} members)")]
    EnumerationCapExceeded { cap: usize, reached: usize },

    #[error("group closure exceeds cap {cap} (at least {reached} elements)")]
    GroupCapExceeded { cap: usize, reached: usize },

    #[error("set size {size} exceeds cap {cap}")]
    SetCapExceeded { size: usize, cap: usize },

    #[error("symmetry generator does not permute the vector set")]
    BadSymmetry,

    #[error("lemma contradiction: promised member {vector} is not in M(lambda) for lambda = {lambda}")]
    LemmaContradiction { vector: String, lambda: String },

    #[error("malformed certificate {id}: {reason}")]
    MalformedCertificate { id: String, reason: String },

    #[error("unknown certificate id {0}")]
    UnknownCertificate(String),

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
