use rodier_core::Error;

/// Failures surfaced by the command line, each with its exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// The problem spec is malformed or violates an invariant.
    #[error("{0}")]
    Spec(String),
    /// A Weyl group is larger than the enumeration cap.
    #[error("{0}")]
    Cap(String),
    /// A verification found a counterexample, or an internal invariant broke.
    #[error("{0}")]
    Verify(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Spec(_) | CliError::Io(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::EnumerationTooLarge { .. } => CliError::Cap(e.to_string()),
            Error::Invariant(_) => CliError::Verify(e.to_string()),
            _ => CliError::Spec(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
