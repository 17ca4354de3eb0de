use alloc::string::String;
use core::fmt;

/// Errors reported by construction and clustering operations.
///
/// Contract violations (e.g. querying a point index out of range) are bugs in
/// the caller and panic instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: bad dimensions, non-finite values, metric axiom
    /// violations, invalid parameters.
    Input(String),
    /// Structurally valid input that the algorithm cannot work with, such as
    /// requesting more clusters than there are distinct locations.
    Degenerate(String),
    /// Refused because the requested computation exceeds a resource guard.
    Resource(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Input(msg) => write!(f, "invalid input: {msg}"),
            Error::Degenerate(msg) => write!(f, "degenerate input: {msg}"),
            Error::Resource(msg) => write!(f, "resource guard: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
