//! Command-line front end for `quditmap-core`: parameter-space scans of the
//! Bell-diagonal family, Werner sweeps, criterion checks on JSON state files
//! and Monte Carlo detection fractions.
//!
//! Exit codes: `0` when nothing is violated, `2` when the checked criterion
//! is violated, `1` on any error.

pub mod commands;
pub mod output;
pub mod state_file;

pub use commands::{run, Cli, Outcome};
