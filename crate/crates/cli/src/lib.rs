//! Command-line plumbing around `covclust`: series files, run
//! configuration and the subcommand bodies.

pub mod commands;
pub mod config;
pub mod error;
pub mod series;

pub use config::RunConfig;
pub use error::{CliError, Result};
