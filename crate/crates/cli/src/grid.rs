//! Cartesian expansion of an experiment into cells and seeded jobs.
//!
//! Cells are numbered in expansion order, which is problems (in file order,
//! then dimensions), then mu, lambda, pc, mutation, crossover, scheme.
//! Invalid combinations keep their index and are reported as skipped, so the
//! index of a valid cell, and therefore its seeds, never depends on which
//! other cells were valid.

use std::collections::BTreeMap;

use pcbench_core::rng::derive_seed;
use pcbench_core::variation::MutationOperator;
use pcbench_core::{Budget, CrossoverOperator, GaConfig, MutationKind, Problem, VariatorScheme};

use crate::catalog::Catalog;
use crate::error::Result;
use crate::spec::{parse_crossover, parse_mutation, parse_scheme, ExperimentSpec, TargetSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub index: usize,
    pub problem_id: u32,
    pub problem_name: String,
    pub dimension: usize,
    pub mu: usize,
    pub lambda: usize,
    /// How lambda was specified: a number, `half` or `mu`.
    pub lambda_rule: String,
    pub pc: f64,
    pub mutation: MutationKind,
    pub crossover: CrossoverOperator,
    pub scheme: VariatorScheme,
    pub budget: u64,
    /// `f64::INFINITY` when runs spend their whole budget.
    pub target: f64,
}

impl Cell {
    pub fn config(&self) -> GaConfig {
        GaConfig {
            mu: self.mu,
            lambda: self.lambda,
            crossover_prob: self.pc,
            mutation: self.mutation,
            crossover: self.crossover,
            scheme: self.scheme,
        }
    }

    /// Identifies the algorithm, independent of problem and dimension.
    pub fn algorithm(&self) -> String {
        format!(
            "mu={} lambda={} pc={} mutation={} crossover={} scheme={}",
            self.mu,
            self.lambda,
            self.pc,
            self.mutation.label(),
            self.crossover.label(),
            self.scheme.label()
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Skipped {
    pub index: usize,
    pub reason: String,
}

/// One run of one cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Job {
    /// Position of the cell in [`Grid::cells`].
    pub cell: usize,
    pub run: usize,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct Grid {
    pub cells: Vec<Cell>,
    pub skipped: Vec<Skipped>,
    /// Size of the full Cartesian product, valid or not.
    pub total: usize,
    pub problems: BTreeMap<(u32, usize), Problem>,
    pub runs: usize,
    pub master_seed: u64,
}

impl Grid {
    pub fn jobs(&self) -> Vec<Job> {
        let mut jobs = Vec::with_capacity(self.cells.len() * self.runs);
        for (pos, cell) in self.cells.iter().enumerate() {
            for run in 0..self.runs {
                jobs.push(Job {
                    cell: pos,
                    run,
                    seed: derive_seed(self.master_seed, cell.index as u64, run as u64),
                });
            }
        }
        jobs
    }

    pub fn problem(&self, cell: &Cell) -> &Problem {
        &self.problems[&(cell.problem_id, cell.dimension)]
    }
}

fn resolve_target(spec: &ExperimentSpec, catalog: &Catalog, p: &Problem) -> f64 {
    let optimum = p.optimum().unwrap_or(f64::INFINITY);
    match &spec.target {
        TargetSpec::Value(v) => *v,
        TargetSpec::Named(name) => match name.as_str() {
            "none" => f64::INFINITY,
            "reference" if p.dimension() == 100 => catalog
                .entry(p.id())
                .map_or(optimum, |e| e.target_n100),
            _ => optimum,
        },
    }
}

pub fn expand_grid(spec: &ExperimentSpec, catalog: &Catalog) -> Result<Grid> {
    spec.validate()?;
    let g = &spec.grid;
    let mut cells = Vec::new();
    let mut skipped = Vec::new();
    let mut problems = BTreeMap::new();
    let mut index = 0usize;
    for ps in &spec.problems {
        for &n in &ps.dims {
            let problem = catalog.build(ps.id, n);
            if let Ok(p) = &problem {
                problems.insert((ps.id, n), p.clone());
            }
            for &mu in &g.mu {
                for lspec in &g.lambda {
                    let lambda = lspec.resolve(mu)?;
                    for &pc in &g.pc {
                        for m in &g.mutation {
                            for c in &g.crossover {
                                for s in &g.scheme {
                                    let here = index;
                                    index += 1;
                                    let p = match &problem {
                                        Ok(p) => p,
                                        Err(e) => {
                                            skip(&mut skipped, here, format!("F{} n={n}: {e}", ps.id));
                                            continue;
                                        }
                                    };
                                    let cfg = GaConfig {
                                        mu,
                                        lambda,
                                        crossover_prob: pc,
                                        mutation: parse_mutation(m)?,
                                        crossover: parse_crossover(c)?,
                                        scheme: parse_scheme(s)?,
                                    };
                                    let budget = spec.budget_multiplier.saturating_mul((n * n) as u64);
                                    let check = cfg
                                        .validate()
                                        .and_then(|_| MutationOperator::new(cfg.mutation, n).map(|_| ()))
                                        .and_then(|_| Budget::new(budget).map(|_| ()));
                                    if let Err(e) = check {
                                        skip(&mut skipped, here, format!("F{} n={n} mu={mu} lambda={lambda} pc={pc}: {e}", ps.id));
                                        continue;
                                    }
                                    if budget < mu as u64 {
                                        skip(&mut skipped, here, format!("F{} n={n}: budget {budget} below mu={mu}", ps.id));
                                        continue;
                                    }
                                    cells.push(Cell {
                                        index: here,
                                        problem_id: ps.id,
                                        problem_name: p.name().to_string(),
                                        dimension: n,
                                        mu,
                                        lambda,
                                        lambda_rule: lspec.label(),
                                        pc,
                                        mutation: cfg.mutation,
                                        crossover: cfg.crossover,
                                        scheme: cfg.scheme,
                                        budget,
                                        target: resolve_target(spec, catalog, p),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(Grid {
        cells,
        skipped,
        total: index,
        problems,
        runs: spec.runs,
        master_seed: spec.master_seed,
    })
}

fn skip(skipped: &mut Vec<Skipped>, index: usize, reason: String) {
    log::warn!("skipping cell {index}: {reason}");
    skipped.push(Skipped { index, reason });
}
