use thiserror::Error;

/// Errors raised by the construction and verification routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular (nullspace dimension {nullity})")]
    Singular { nullity: usize },

    #[error("operator is not invertible: its only eigenvalue is zero")]
    NotInvertible,

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("operator does not have the single eigenvalue {expected}")]
    EigenvalueMismatch { expected: String },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("commutator [{u}, {v}] is not in the span of the basis images")]
    RealizationInconsistency { u: String, v: String },

    #[error("nilpotent family invariant violated: {0}")]
    FamilyInvariant(String),

    #[error("consistency error: {0}")]
    Consistency(String),

    #[error("index {index} is not interior to the window: {reason}")]
    Interior { index: String, reason: String },

    #[error("block membership error: {0}")]
    BlockMembership(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("reconstruction failed at layer {layer}: {reason}")]
    Reconstruction { layer: String, reason: String },

    #[error("malformed document: {0}")]
    Document(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
