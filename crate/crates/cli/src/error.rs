use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] checkers_core::Error),

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{path}: {source}", path = .0.display(), source = .1)]
    Io(PathBuf, #[source] std::io::Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Model(e) => e.code(),
            CliError::InvalidRange(_) => "invalid-range",
            CliError::InvalidConfig(_) => "invalid-config",
            CliError::Io(..) => "io-error",
        }
    }

    /// 2 for bad input, 1 for a numerical failure on valid input.
    pub fn exit_code(&self) -> i32 {
        use checkers_core::Error as E;
        match self {
            CliError::Model(
                E::NonPositiveParameter { .. }
                | E::ScatteringTooStrong { .. }
                | E::DegenerateFilm { .. },
            ) => 2,
            CliError::Model(_) => 1,
            CliError::InvalidRange(_) | CliError::InvalidConfig(_) => 2,
            CliError::Io(..) => 1,
        }
    }

    /// `{"error": code, "message": text}` on one line.
    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": self.code(), "message": self.to_string() }).to_string()
    }
}
