use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Unusable `(q, ℓ)` or other caller-supplied parameters.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("order of zero is undefined")]
    ZeroOrder,
    #[error("{0} is not in the required subgroup")]
    NotInSubgroup(String),
    #[error("matrix has determinant {0}, expected 1")]
    Determinant(u32),
    #[error("value is not real: {0}")]
    NotReal(String),
    #[error("value is not rational: {0}")]
    NotRational(String),
    #[error("value is not l-integral: {0}")]
    NotIntegral(String),
    #[error("class functions live on different groups ({0} vs {1})")]
    GroupMismatch(String, String),
    #[error("subgroup {0} is not materialised")]
    NotMaterialised(String),
    #[error("certification failed at class {class}: {reason}")]
    Certification { class: String, reason: String },
    #[error("closed form mismatch: {0}")]
    ClosedFormMismatch(String),
    #[error("block data mismatch: {0}")]
    BlockMismatch(String),
    #[error("type function vanishes: {0}")]
    ZeroSign(String),
    #[error("idempotent coefficient mismatch for block {block} at {element}")]
    IdempotentMismatch { block: String, element: String },
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("serialisation: {0}")]
    Serialisation(String),
}
