use std::fmt;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const NUMERIC: i32 = 3;
    pub const MISSING_ARTIFACT: i32 = 4;
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or configuration.
    Usage(String),
    /// A numerical routine failed.
    Numeric(stabletree::Error),
    /// A required input file (a CDF table) does not exist.
    MissingArtifact(String),
    /// One or more verification criteria failed.
    VerifyFailed(Vec<String>),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Numeric(_) | CliError::Io(_) => exit::NUMERIC,
            CliError::MissingArtifact(_) => exit::MISSING_ARTIFACT,
            CliError::VerifyFailed(_) => exit::VERIFY_FAILED,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numeric(e) => write!(f, "numerical failure: {e}"),
            CliError::MissingArtifact(m) => write!(f, "missing artifact: {m}"),
            CliError::VerifyFailed(ids) => write!(f, "verification failed: {}", ids.join(", ")),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<stabletree::Error> for CliError {
    /// Arguments outside an operation's domain are the caller's mistake and
    /// count as usage errors; everything else is numerical.
    fn from(e: stabletree::Error) -> Self {
        match e {
            stabletree::Error::Domain { .. } | stabletree::Error::Parse(_) | stabletree::Error::Resolution { .. } => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Numeric(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
