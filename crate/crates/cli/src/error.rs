use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) | CliError::Io(_) => 3,
            CliError::Validation(_) => 4,
        })
    }
}

impl From<iabcache::Error> for CliError {
    fn from(e: iabcache::Error) -> Self {
        use iabcache::Error as E;
        match e {
            E::InvalidConfig { .. } | E::Parse(_) | E::Domain { .. } | E::InfeasibleCache { .. } => {
                CliError::Usage(e.to_string())
            }
            E::Quadrature { .. } => CliError::Numeric(e.to_string()),
            E::Io(s) => CliError::Io(s),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
