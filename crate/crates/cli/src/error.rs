use std::fmt;
use std::path::PathBuf;

/// CLI failure classes, each with a stable exit code:
/// 0 success, 1 usage/validation, 2 I/O, 3 condition violated under
/// `--strict`.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, bad file contents, or a violated contract.
    Usage(String),
    /// The OS refused a read or write.
    Io { path: PathBuf, source: std::io::Error },
    /// A run finished with `ConditionViolated` while `--strict` was on.
    StrictCondition,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io { .. } => 2,
            CliError::StrictCondition => 3,
        }
    }

    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::StrictCondition => {
                write!(f, "convergence condition violated (strict mode)")
            }
        }
    }
}

impl std::error::Error for CliError {}

impl From<grades_core::Error> for CliError {
    fn from(e: grades_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
