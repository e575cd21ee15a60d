use pzf_core::PzfError;

/// Exit status for bad input: arguments, files, or graphs the engine rejects.
pub const EXIT_INPUT: i32 = 2;
/// Exit status when a state space grows past the configured cap.
pub const EXIT_STATE_CAP: i32 = 3;
/// Exit status when a checked report contains mismatches.
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] PzfError),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io { .. } => EXIT_INPUT,
            CliError::Core(PzfError::StateCapExceeded { .. }) => EXIT_STATE_CAP,
            CliError::Core(PzfError::NotTriangular { .. })
            | CliError::Core(PzfError::SpuriousAbsorbingState(_)) => 1,
            CliError::Core(_) => EXIT_INPUT,
            CliError::Output(_) => 1,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

pub(crate) fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}
