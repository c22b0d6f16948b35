use moran_core::MoranError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{context}: {source}")]
    Input {
        context: String,
        #[source]
        source: MoranError,
    },
    #[error("{0}")]
    Malformed(String),
    #[error("id mismatch between attribute table and geometry: {0}")]
    IdMismatch(String),
    #[error("port {0} is already in use")]
    PortInUse(u16),
    #[error("region {0} has no neighbors")]
    IsolatedRegion(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_)
            | CliError::Input { .. }
            | CliError::Malformed(_)
            | CliError::Io { .. } => 2,
            CliError::IdMismatch(_) => 3,
            CliError::PortInUse(_) => 4,
            CliError::IsolatedRegion(_) => 5,
        }
    }

    pub(crate) fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }

    /// Maps a core error, keeping the categories that have their own exit code.
    pub(crate) fn core(context: impl Into<String>, source: MoranError) -> Self {
        match source {
            MoranError::IdMismatch(ids) => CliError::IdMismatch(ids),
            MoranError::IsolatedRegion(id) => CliError::IsolatedRegion(id),
            source => CliError::Input {
                context: context.into(),
                source,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
