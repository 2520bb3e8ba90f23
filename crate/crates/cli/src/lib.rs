//! JSON formats, bundled example fixtures and the `kd` command line for
//! [`kummer_core`].

pub mod commands;
pub mod fixtures;
pub mod json;
pub mod parse;

pub use commands::{run, Cli, CliError};
