use thiserror::Error;

/// Failures surfaced to the shell, each with its own exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

impl From<gemo::Error> for CliError {
    fn from(e: gemo::Error) -> Self {
        use gemo::Error as E;
        let msg = e.to_string();
        match e {
            E::Parse { .. } | E::NonPositive { .. } | E::TooFewObservations { .. } => {
                CliError::Data(msg)
            }
            E::InvalidParameter { .. } | E::Domain(_) | E::NotNested(_) => CliError::Usage(msg),
            E::Convergence { .. } | E::Quadrature { .. } | E::TailUnderflow { .. } | E::NonFinite { .. } => {
                CliError::Numerical(msg)
            }
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
