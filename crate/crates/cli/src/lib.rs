//! Front-end for the `hsmult` binary: instance files, commands and reports.

pub mod commands;
pub mod error;
pub mod instance;

pub use commands::{load_instance, run_command, Command, Overrides, Report, RunOptions};
pub use error::{CliError, ErrorKind};
pub use instance::{parse_instance, to_json, to_text, InstanceFile};
