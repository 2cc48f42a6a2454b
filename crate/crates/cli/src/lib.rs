//! Command-line front end for the `nrpt` engine.

pub mod commands;
pub mod config;
pub mod error;
pub mod models;
pub mod output;

pub use commands::{execute, Command};
pub use config::{PartialConfig, RunConfig};
pub use error::{CliError, CliResult};
pub use models::ModelSpec;
