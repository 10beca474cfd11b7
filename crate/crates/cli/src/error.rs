use serde_json::Value;
use sheafsym_core::{ContextError, InductionError, LagrangianError, SheafError, SpringerError};
use sheafsym_oracle::OracleError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    /// A verification ran and found mismatches; the report is still printed.
    #[error("verification failed")]
    Failed(Value),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Failed(_) => 1,
        }
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain(e.to_string())
            }
        })*
    };
}

domain_from!(ContextError, InductionError, LagrangianError, SheafError, SpringerError, OracleError);
