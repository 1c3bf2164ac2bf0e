use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable lists differ: [{left}] vs [{right}]")]
    VariableMismatch { left: String, right: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("no substitution supplied for variable `{0}`")]
    MissingSubstitution(String),

    #[error("no value supplied for variable `{0}`")]
    MissingAssignment(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("field component depends on the time variable: {0}")]
    TimeDependent(String),

    #[error("empty sequence of vector fields")]
    EmptySequence,

    #[error("truncation order {requested} exceeds jet order {order}")]
    TruncationOrder { requested: usize, order: usize },

    #[error("jets disagree on Y at order {order} (coordinate {coordinate})")]
    JetMismatch { order: usize, coordinate: usize },

    #[error("jet orders differ: {0} vs {1}")]
    JetOrderMismatch(usize, usize),

    #[error("invalid subspace: {0}")]
    InvalidSubspace(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("membership check was inconclusive: {0}")]
    Inconclusive(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
