use thiserror::Error;

/// Every failure the kernel can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structural mismatch: {0}")]
    Structural(String),
    #[error("q-commutation violated by the images of {0} and {1}")]
    CommutationViolation(String, String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("entry {0} is not invertible")]
    NotInvertible(String),
    #[error("shape violation: {0}")]
    Shape(String),
    #[error("parameter {0} is not central")]
    NonCentral(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("inconsistent gluing: {0}")]
    InconsistentGluing(String),
    #[error("self-gluing of {0} needs an ordering flag")]
    SelfGluing(String),
    #[error("non-hyperbolic signature: {0}")]
    NonHyperbolic(String),
    #[error("degenerate parameter: {0}")]
    Degenerate(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("arrow weight out of supported range at {0}")]
    WeightRange(String),
    #[error("invalid seizure site: {0}")]
    Seizure(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("outside the invariant subspace: {0}")]
    OutsideSubspace(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
