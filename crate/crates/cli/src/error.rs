use cfrac_core::coeffspec::{CoeffError, EvalError};
use cfrac_core::scalar::ScalarError;

/// Failures that end a command before any output is produced.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("numeric domain error: {0}")]
    Domain(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Domain(_) => 3,
        }
    }
}

impl From<ScalarError> for CliError {
    fn from(e: ScalarError) -> Self {
        match e {
            ScalarError::Parse(_) | ScalarError::Config(_) => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<CoeffError> for CliError {
    fn from(e: CoeffError) -> Self {
        match &e {
            CoeffError::Eval { source, .. } => match source {
                EvalError::Unbound(_) | EvalError::NonIntegerExponent(_) | EvalError::InexactExponent(_) => {
                    CliError::Usage(e.to_string())
                }
                _ => CliError::Domain(e.to_string()),
            },
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<cfrac_core::Error> for CliError {
    fn from(e: cfrac_core::Error) -> Self {
        use cfrac_core::Error as E;
        match e {
            E::Coeff(c) => c.into(),
            E::Scalar(s) => s.into(),
            E::InvalidArgument(_) | E::EnumerationGuard { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}
