//! Experiment runner for the `smmala` sampler: config files, data
//! ingestion, and CSV / JSON result files.

pub mod config;
pub mod data;
pub mod error;
pub mod experiment;
pub mod output;

pub use config::{ExperimentConfig, Overrides};
pub use error::{CliError, Result};
pub use experiment::{execute, run_experiment, Outcome};
