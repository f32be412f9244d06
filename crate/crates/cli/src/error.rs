use ecogame_core::Error as CoreError;

/// CLI failure modes, each mapped to a process exit code:
/// 2 for configuration problems, 3 for numerical failures, 4 for
/// boundary-policy refusals, 1 for I/O trouble.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("{0}")]
    Boundary(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Boundary(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        match &err {
            CoreError::InvalidParameter(_)
            | CoreError::AssumptionViolation(_)
            | CoreError::OutOfRegion(_) => CliError::Config(err.to_string()),
            CoreError::NonFiniteState { .. } | CoreError::DegenerateDenominator => {
                CliError::Numerical(err.to_string())
            }
            CoreError::BoundaryPolicy(_) => CliError::Boundary(err.to_string()),
            _ => CliError::Config(err.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Config(format!("config parse error: {err}"))
    }
}
