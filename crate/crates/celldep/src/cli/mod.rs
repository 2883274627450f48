//! Configuration loading, report types, and the command implementations
//! behind the `celldep` binary.

pub mod commands;
pub mod config;
pub mod report;

pub use commands::CliError;
pub use config::{ConfigError, OutputFormat, PminRule, RunConfig};
