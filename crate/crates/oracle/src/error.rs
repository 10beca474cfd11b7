use sheafsym_core::InductionError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("rank {0} outside the supported range 0..=5")]
    OutOfRange(usize),
    #[error("size mismatch: partition of {left} against class of {right}")]
    SizeMismatch { left: u32, right: u32 },
    #[error("non-integral multiplicity {value} for {label}")]
    NonIntegral { label: String, value: String },
    #[error("shape {0} not available here")]
    Shape(String),
    #[error("label {0} does not belong to this group")]
    Label(String),
    #[error(transparent)]
    Induction(#[from] InductionError),
}
