//! Command line front end: web scripts, JSON forms and subcommands.

pub mod commands;
pub mod json;
pub mod script;

pub use commands::{run, Cli, CliError, Command};
pub use script::{parse_webscript, render, ScriptError, WebScript};
