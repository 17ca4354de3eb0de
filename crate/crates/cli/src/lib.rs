//! Experiment harness around `ipstab-core`: instance loading and generation,
//! algorithm dispatch, JSON/CSV reporting, and the `ipstab` command-line
//! interface.

pub mod cli;
pub mod error;
pub mod exec;
pub mod instance;
pub mod io;
pub mod report;

pub use error::{AppError, AppResult};
