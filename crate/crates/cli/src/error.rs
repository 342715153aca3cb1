use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid {field}: {reason}")]
    Validation { field: String, reason: String },
    #[error("computation failed: {0}")]
    Compute(gws_fusion::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn validation(field: impl Into<String>, reason: impl Into<String>) -> Self {
        CliError::Validation {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// Process exit code: 1 validation, 2 numerical failure, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation { .. } => 1,
            CliError::Compute(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

impl From<gws_fusion::Error> for CliError {
    fn from(e: gws_fusion::Error) -> Self {
        match e {
            gws_fusion::Error::InvalidParameter { name, reason } => CliError::validation(name, reason),
            e if e.is_numerical() => CliError::Compute(e),
            e => CliError::validation("input", e.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
