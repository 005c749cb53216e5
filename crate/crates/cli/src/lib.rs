//! Front end for `qnlo-core`: TOML run configs, command dispatch and
//! deterministic artifact output.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use commands::{run, Command, Report, RunOptions};
pub use config::{emit_config, load, parse_config, RunConfig};
pub use error::CliError;
