use std::fmt;

/// Harness-level errors, mapped onto process exit codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AppError {
    /// Bad flags or incompatible flag combinations (exit 1).
    Config(String),
    /// Unreadable or invalid input data, including algorithm preconditions
    /// that depend on the data (exit 2).
    Data(String),
    /// A resource guard refused the computation (exit 3).
    Resource(String),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Config(_) => 1,
            AppError::Data(_) => 2,
            AppError::Resource(_) => 3,
        }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Config(msg) => write!(f, "configuration error: {msg}"),
            AppError::Data(msg) => write!(f, "input error: {msg}"),
            AppError::Resource(msg) => write!(f, "resource guard: {msg}"),
        }
    }
}

impl std::error::Error for AppError {}

impl From<ipstab_core::Error> for AppError {
    fn from(e: ipstab_core::Error) -> Self {
        match e {
            ipstab_core::Error::Input(m) | ipstab_core::Error::Degenerate(m) => AppError::Data(m),
            ipstab_core::Error::Resource(m) => AppError::Resource(m),
        }
    }
}

pub type AppResult<T> = Result<T, AppError>;
