//! Experiment tooling for pcbench: the problem catalog, declarative
//! experiment specs, the parallel grid runner with resumable run logs, and
//! report generation.

pub mod catalog;
pub mod error;
pub mod grid;
pub mod logfile;
pub mod report;
pub mod runner;
pub mod spec;
pub mod validate;

pub use catalog::Catalog;
pub use error::{BenchError, Result};
pub use grid::{expand_grid, Cell, Grid, Job};
pub use report::{load_experiment, report, select_targets, Experiment, Report, ReportKind, ReportOptions};
pub use runner::{run_experiment, Manifest, RunSummary};
pub use spec::ExperimentSpec;
