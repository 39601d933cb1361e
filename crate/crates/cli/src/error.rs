//! CLI-side errors with run context.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// A configuration field is invalid; the message names the field.
    #[error("config error: {0}")]
    Config(String),

    /// A numeric or model error, annotated with where in the experiment it
    /// happened.
    #[error("{context}: {source}")]
    Run {
        context: String,
        source: blindrank_core::Error,
    },

    #[error(transparent)]
    Core(#[from] blindrank_core::Error),

    #[error("file error on {path}: {source}")]
    File {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    /// Attach experiment context to a core error.
    pub fn in_context(context: impl Into<String>) -> impl FnOnce(blindrank_core::Error) -> Self {
        let context = context.into();
        move |source| CliError::Run { context, source }
    }

    pub fn file(path: &std::path::Path) -> impl FnOnce(std::io::Error) -> Self + '_ {
        move |source| CliError::File {
            path: path.display().to_string(),
            source,
        }
    }
}
