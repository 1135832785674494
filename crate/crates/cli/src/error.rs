use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{origin}{}: {message}", line.map(|l| format!(":{l}")).unwrap_or_default())]
    Config { origin: String, line: Option<usize>, message: String },

    #[error("invalid `{key}`: {reason}")]
    Invalid { key: &'static str, reason: String },

    #[error("unknown builtin `{0}`; run `oscnet list-builtins`")]
    UnknownBuiltin(String),

    #[error(transparent)]
    Core(#[from] oscnet::Error),

    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn invalid(key: &'static str, reason: String) -> Self {
        CliError::Invalid { key, reason }
    }

    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        CliError::Io { path: path.as_ref().display().to_string(), source }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
