use thiserror::Error;

/// Errors surfaced by the analysis library.
///
/// The CLI distinguishes usage/configuration mistakes (exit code 2) from
/// fatal analysis failures (exit code 3); [`Error::is_usage`] encodes that
/// split so the mapping lives in one place.
#[derive(Debug, Error)]
pub enum Error {
    #[error("project root `{0}` does not exist or is not a directory")]
    RootNotFound(String),

    #[error("no parseable source files under `{0}`")]
    EmptyTree(String),

    #[error("invalid glob pattern `{pattern}`: {source}")]
    Glob {
        pattern: String,
        source: globset::Error,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    BadRecord {
        path: String,
        line: usize,
        message: String,
    },

    #[error("{0}")]
    Analysis(String),
}

impl Error {
    /// True when the error is the caller's fault (bad flags, bad config,
    /// missing inputs) rather than an analysis failure.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::RootNotFound(_) | Error::Glob { .. } | Error::Config(_)
        )
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
