use thiserror::Error;

/// CLI failure classes; each maps to a stable process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("infeasible adjustment: {0}")]
    Infeasible(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    /// 0 success, 1 invalid config, 2 infeasible adjustment, 3 check-mode
    /// failure, 4 I/O error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InvalidConfig(_) => 1,
            CliError::Infeasible(_) => 2,
            CliError::CheckFailed(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

impl From<edgeplan_core::Error> for CliError {
    fn from(err: edgeplan_core::Error) -> Self {
        use edgeplan_core::Error::*;
        match err {
            InfeasibleBackhaulRate { .. }
            | InfeasibleCacheRatio { .. }
            | CacheNotBeneficial { .. }
            | DegenerateCache => CliError::Infeasible(err.to_string()),
            _ => CliError::InvalidConfig(err.to_string()),
        }
    }
}
