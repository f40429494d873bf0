//! Configuration loading, command dispatch and report emission for `svlab`.

pub mod config;
pub mod emit;
pub mod run;

pub use config::{load, parse_config, validate, Config, Diagnostic};
pub use run::{execute, run, write_artifacts, Artifacts, Command, Failure, Outcome, Overrides};
