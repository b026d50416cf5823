//! Command-line driver for the k-cycle shuffle library: configuration,
//! deterministic parallel runs, CSV / JSON-lines output and the verification
//! suite.

pub mod config;
pub mod error;
pub mod output;
pub mod run;
pub mod verify;

pub use config::{Cli, ExperimentConfig};
pub use error::CliError;
pub use run::{emit_theory_curves, run, LSpec};
