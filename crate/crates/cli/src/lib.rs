//! Experiment runner and command-line front end over `blindrank-core`.

pub mod cli;
pub mod config;
pub mod error;
pub mod runner;
pub mod table;

pub use cli::{cli_main, resolve_output, OUT_DIR_ENV};
pub use config::{ExperimentConfig, GraphSpec, OutputFormat, Preset};
pub use error::CliError;
pub use runner::{build_graph, graph_seed, normalized_to_samples, run_experiment, signal_seed};
pub use table::{emit_results, Cell, ResultsTable};
