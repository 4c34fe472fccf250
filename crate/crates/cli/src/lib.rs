//! Configuration, orchestration, and data output for the `spinfringe` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod verify;

pub use config::{load_config, OutputFormat, Overrides, RawConfig, SimulationConfig, OUTPUT_DIR_ENV};
pub use error::CliError;
pub use verify::{run_verify, VerifyOptions, VerifyReport};
