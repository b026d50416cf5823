use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] kcycle::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("{0} verification check(s) failed")]
    VerifyFailed(usize),
}

impl CliError {
    /// 1 for failed checks, 2 for usage and parameter errors, 3 for size limits.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerifyFailed(_) => 1,
            CliError::Core(kcycle::Error::SizeLimit { .. }) => 3,
            CliError::Usage(_) | CliError::Core(_) | CliError::Io(_) => 2,
        }
    }
}
