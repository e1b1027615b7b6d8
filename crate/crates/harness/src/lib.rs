//! Experiment harness for the vague-consensus simulator: configuration,
//! parameter sweeps over threshold, evidence rate, language size and mode,
//! multi-run aggregation, and plot-ready CSV output.

pub mod cli;
pub mod config;
pub mod error;
pub mod output;
pub mod sweep;

pub use config::{ConfigOverrides, Experiment, ExperimentConfig};
pub use error::HarnessError;
pub use sweep::{cells, execute_sweep, simulate_cell, AggregateRow, CellKey, Stat, SweepOutcome};
