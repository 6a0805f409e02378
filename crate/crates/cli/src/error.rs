use thiserror::Error;

/// Failure of a command, carrying its process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("constraint violated ({invariant}): {source}")]
    Constraint {
        invariant: &'static str,
        #[source]
        source: suprematrix::Error,
    },

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Malformed(_) => 2,
            CliError::Constraint { .. } => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub fn malformed(message: impl Into<String>) -> Self {
        CliError::Malformed(message.into())
    }

    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }
}

impl From<suprematrix::Error> for CliError {
    fn from(source: suprematrix::Error) -> Self {
        use suprematrix::Error as E;
        let invariant = match &source {
            E::NonFinite { .. } => "finite entries",
            E::NotHermitian { .. } => "hermiticity",
            E::TraceNotUnit { .. } => "unit trace",
            E::ProbabilityOutOfRange { .. } => "probability range",
            E::DimensionMismatch { .. } => "dimension",
            E::NotUnitary { .. } => "unitarity",
            E::IncompleteKraus { .. } => "kraus completeness",
            E::InvalidWeights { .. } => "mixture weights",
            E::ImaginaryResidue { .. } => "real affine map",
            E::Internal(_) => "internal",
        };
        CliError::Constraint { invariant, source }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Malformed(e.to_string())
    }
}
