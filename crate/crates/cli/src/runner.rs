//! Executes an experiment grid into a run-log directory.
//!
//! Layout of the output directory:
//!
//! ```text
//! manifest.toml                 spec hash, catalog version, per-cell status
//! spec.toml                     canonical copy of the spec
//! runs/cell-000003/run-0007.log one log per (cell, run)
//! ```
//!
//! Every job draws its seed from `(master_seed, cell index, run index)`, so
//! the worker count and scheduling order never change any log. Rerunning
//! into an existing directory skips jobs whose log is already complete.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use pcbench_core::{run_ga, Budget, RngStream};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::Catalog;
use crate::error::{BenchError, Result};
use crate::grid::{expand_grid, Cell, Grid, Job};
use crate::logfile::{self, LogHeader, RunRecord};
use crate::spec::ExperimentSpec;

pub const MANIFEST: &str = "manifest.toml";
pub const SPEC_COPY: &str = "spec.toml";
pub const STATUS_COMPLETE: &str = "complete";
pub const STATUS_INCOMPLETE: &str = "incomplete";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub spec_name: String,
    pub spec_hash: String,
    pub catalog_version: String,
    pub status: String,
    pub runs_per_cell: usize,
    pub total_cells: usize,
    #[serde(default)]
    pub cell: Vec<CellRecord>,
    #[serde(default)]
    pub skipped: Vec<SkippedRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub index: usize,
    pub problem: u32,
    pub problem_name: String,
    pub dimension: usize,
    pub mu: usize,
    pub lambda: usize,
    pub lambda_rule: String,
    pub pc: f64,
    pub mutation: String,
    pub crossover: String,
    pub scheme: String,
    pub budget: u64,
    pub target: f64,
    pub completed: usize,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedRecord {
    pub index: usize,
    pub reason: String,
}

impl Manifest {
    pub fn load(dir: &Path) -> Result<Self> {
        let path = dir.join(MANIFEST);
        let text = std::fs::read_to_string(&path).map_err(BenchError::io(&path))?;
        toml::from_str(&text).map_err(|e| BenchError::Parse {
            path,
            message: e.to_string(),
        })
    }

    fn store(&self, dir: &Path) -> Result<()> {
        let text = toml::to_string(self).map_err(|e| BenchError::Invariant(format!("manifest: {e}")))?;
        let path = dir.join(MANIFEST);
        let tmp = dir.join("manifest.toml.tmp");
        std::fs::write(&tmp, text).map_err(BenchError::io(&tmp))?;
        std::fs::rename(&tmp, &path).map_err(BenchError::io(&path))
    }

    pub fn is_complete(&self) -> bool {
        self.status == STATUS_COMPLETE
    }
}

impl CellRecord {
    fn new(cell: &Cell, completed: usize, runs: usize) -> Self {
        Self {
            index: cell.index,
            problem: cell.problem_id,
            problem_name: cell.problem_name.clone(),
            dimension: cell.dimension,
            mu: cell.mu,
            lambda: cell.lambda,
            lambda_rule: cell.lambda_rule.clone(),
            pc: cell.pc,
            mutation: cell.mutation.label().into(),
            crossover: cell.crossover.label().into(),
            scheme: cell.scheme.label().into(),
            budget: cell.budget,
            target: cell.target,
            completed,
            status: if completed == runs { STATUS_COMPLETE } else { STATUS_INCOMPLETE }.into(),
        }
    }

    /// Algorithm label matching [`Cell::algorithm`].
    pub fn algorithm(&self) -> String {
        format!(
            "mu={} lambda={} pc={} mutation={} crossover={} scheme={}",
            self.mu, self.lambda, self.pc, self.mutation, self.crossover, self.scheme
        )
    }
}

pub fn cell_dir(out: &Path, cell_index: usize) -> PathBuf {
    out.join("runs").join(format!("cell-{cell_index:06}"))
}

pub fn log_path(out: &Path, cell_index: usize, run: usize) -> PathBuf {
    cell_dir(out, cell_index).join(format!("run-{run:04}.log"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunSummary {
    pub jobs: usize,
    pub executed: usize,
    pub reused: usize,
    pub failed: usize,
    pub cells: usize,
    pub incomplete_cells: usize,
    pub skipped_cells: usize,
}

fn is_done(out: &Path, grid: &Grid, job: &Job) -> bool {
    let cell = &grid.cells[job.cell];
    match logfile::read(&log_path(out, cell.index, job.run)) {
        Ok(rec) => rec.header == LogHeader::new(cell, job.run, job.seed),
        Err(_) => false,
    }
}

fn execute(out: &Path, grid: &Grid, job: &Job) -> Result<()> {
    let cell = &grid.cells[job.cell];
    let mut rng = RngStream::from_seed(job.seed);
    let result = run_ga(
        &cell.config(),
        grid.problem(cell),
        Budget::new(cell.budget)?,
        cell.target,
        &mut rng,
    )?;
    if result.problem_evals != result.evals_used || !result.log.is_well_formed() {
        return Err(BenchError::Invariant(format!(
            "cell {} run {}: evaluation accounting is inconsistent",
            cell.index, job.run
        )));
    }
    let rec = RunRecord {
        header: LogHeader::new(cell, job.run, job.seed),
        log: result.log,
    };
    logfile::write(&log_path(out, cell.index, job.run), &rec)
}

/// Runs every missing job of `spec` into `out`.
///
/// Refuses to touch a directory whose manifest was written for another experiment
/// or catalog. Job failures do not abort the experiment; they leave their
/// cells marked incomplete and are counted in the summary.
pub fn run_experiment(
    spec: &ExperimentSpec,
    catalog: &Catalog,
    out: &Path,
    workers: Option<usize>,
) -> Result<RunSummary> {
    let hash = spec.hash();
    std::fs::create_dir_all(out).map_err(BenchError::io(out))?;
    if out.join(MANIFEST).exists() {
        let old = Manifest::load(out)?;
        if old.spec_hash != hash {
            return Err(BenchError::Usage(format!(
                "{} holds results of a different spec (hash {}, this spec {}); refusing to resume",
                out.display(),
                old.spec_hash,
                hash
            )));
        }
        if old.catalog_version != catalog.version {
            return Err(BenchError::Usage(format!(
                "{} was produced with catalog {}, current catalog is {}; refusing to resume",
                out.display(),
                old.catalog_version,
                catalog.version
            )));
        }
    }
    let spec_path = out.join(SPEC_COPY);
    std::fs::write(&spec_path, spec.canonical()).map_err(BenchError::io(&spec_path))?;

    let grid = expand_grid(spec, catalog)?;
    let manifest_for = |completed: &[usize]| Manifest {
        spec_name: spec.name.clone(),
        spec_hash: hash.clone(),
        catalog_version: catalog.version.clone(),
        status: if completed.iter().all(|&c| c == grid.runs) {
            STATUS_COMPLETE
        } else {
            STATUS_INCOMPLETE
        }
        .into(),
        runs_per_cell: grid.runs,
        total_cells: grid.total,
        cell: grid
            .cells
            .iter()
            .zip(completed)
            .map(|(c, &done)| CellRecord::new(c, done, grid.runs))
            .collect(),
        skipped: grid
            .skipped
            .iter()
            .map(|s| SkippedRecord {
                index: s.index,
                reason: s.reason.clone(),
            })
            .collect(),
    };
    // an interrupted run still leaves a manifest that guards the directory
    manifest_for(&vec![0; grid.cells.len()]).store(out)?;

    for cell in &grid.cells {
        let dir = cell_dir(out, cell.index);
        std::fs::create_dir_all(&dir).map_err(BenchError::io(&dir))?;
    }
    let jobs = grid.jobs();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
        .map_err(|e| BenchError::Usage(format!("cannot start worker pool: {e}")))?;
    let finished = AtomicUsize::new(0);
    let outcomes: Vec<(bool, Result<()>)> = pool.install(|| {
        jobs.par_iter()
            .map(|job| {
                if is_done(out, &grid, job) {
                    return (true, Ok(()));
                }
                let r = execute(out, &grid, job);
                if let Err(e) = &r {
                    log::error!("cell {} run {}: {e}", grid.cells[job.cell].index, job.run);
                }
                let k = finished.fetch_add(1, Ordering::Relaxed) + 1;
                if k % 1000 == 0 {
                    log::info!("{k} runs executed");
                }
                (false, r)
            })
            .collect()
    });

    let mut completed = vec![0usize; grid.cells.len()];
    let mut summary = RunSummary {
        jobs: jobs.len(),
        cells: grid.cells.len(),
        skipped_cells: grid.skipped.len(),
        ..RunSummary::default()
    };
    let mut invariant = None;
    for (job, (reused, outcome)) in jobs.iter().zip(outcomes) {
        match outcome {
            Ok(()) => {
                completed[job.cell] += 1;
                if reused {
                    summary.reused += 1;
                } else {
                    summary.executed += 1;
                }
            }
            Err(e) => {
                summary.failed += 1;
                if matches!(e, BenchError::Invariant(_)) {
                    invariant.get_or_insert(e);
                }
            }
        }
    }
    summary.incomplete_cells = completed.iter().filter(|&&c| c < grid.runs).count();
    manifest_for(&completed).store(out)?;
    match invariant {
        Some(e) => Err(e),
        None => Ok(summary),
    }
}
