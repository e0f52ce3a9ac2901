use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse { path: PathBuf, line: u64, message: String },

    #[error("{0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] covclust::Error),
}

impl CliError {
    /// Stable machine-readable category printed on failure.
    pub fn category(&self) -> &'static str {
        use covclust::Error as E;
        match self {
            Self::Io { .. } => "io",
            Self::Parse { .. } => "parse",
            Self::Config(_) => "config",
            Self::Core(e) => match e {
                E::InfeasibleWindow(_) | E::InfeasibleSchedule(_) | E::TooManyClusters { .. } => "infeasible",
                E::Factorization(_) | E::NonFiniteGamma(..) | E::NonFinite(..) => "numeric",
                _ => "invalid-input",
            },
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
