//! Command-line frontend: every core operation as a subcommand, driven by
//! flags or `key = value` files, with CSV or JSON output.

pub mod app;
pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod params;

pub use app::{cli, execute, run};
pub use commands::Command;
pub use config::{parse_config, Format, RunConfig};
pub use error::CliError;
