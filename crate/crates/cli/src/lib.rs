//! Experiment driver behind the qelab binary: configuration handling,
//! batch expansion/retrieval/evaluation, and report rendering.

pub mod config;
pub mod error;
pub mod experiment;
pub mod report;

pub use config::{ExperimentConfig, MethodChoice};
pub use error::CliError;
