use thiserror::Error;

/// Exit status for usage problems (bad flags, tokens, I/O on the output path).
pub const EXIT_USAGE: i32 = 1;
/// Exit status when a state did not converge or the solver failed.
pub const EXIT_NUMERICAL: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Solver(#[from] planar_atom::Error),

    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => EXIT_USAGE,
            // bad numbers passed through flags surface as domain/config errors
            CliError::Solver(planar_atom::Error::Domain { .. } | planar_atom::Error::Config(_)) => EXIT_USAGE,
            CliError::Solver(_) => EXIT_NUMERICAL,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
