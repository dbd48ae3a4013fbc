use std::path::PathBuf;

use thiserror::Error;

/// Errors of the command line front end, grouped by exit code.
#[derive(Debug, Error)]
pub enum BenchError {
    /// Bad input: malformed files, invalid arguments, refused resumes.
    #[error("{0}")]
    Usage(String),
    #[error("cannot parse {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] pcbench_core::Error),
    /// Some requested data is missing; whatever could be produced was written.
    #[error("incomplete data: {0}")]
    Incomplete(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, BenchError>;

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INCOMPLETE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

impl BenchError {
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Incomplete(_) => EXIT_INCOMPLETE,
            BenchError::Invariant(_) => EXIT_INVARIANT,
            _ => EXIT_USAGE,
        }
    }

    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> BenchError {
        let path = path.into();
        move |source| BenchError::Io { path, source }
    }
}
