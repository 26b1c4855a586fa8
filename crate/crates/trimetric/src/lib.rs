//! File formats, experiments and the command-line driver for
//! [`trimetric_core`].
//!
//! The binary `trimetric` is a thin wrapper around [`commands`] and
//! [`experiments`]; both return text and tables rather than printing, so
//! the same code paths are testable in-process.

pub mod commands;
pub mod error;
pub mod experiments;
pub mod input;
pub mod output;

pub use error::{CliError, CliResult};
pub use experiments::{run, ExperimentName, ExperimentReport, Settings};
