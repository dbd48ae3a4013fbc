//! Line-oriented run logs.
//!
//! ```text
//! # pcbench run log v1
//! # cell: 3
//! # run: 0
//! # ...                      (full configuration, one key per line)
//! evals best
//! 1 37
//! 4 41
//! # final_evals: 5120
//! # hit_target: false
//! # termination: budget-exhausted
//! ```
//!
//! Each data line is an improvement of the best-so-far fitness. A log is
//! complete only if the trailer is present; files are written through a
//! temporary name and renamed, so a crash never leaves a complete-looking
//! partial file.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use pcbench_core::analytics::Improvement;
use pcbench_core::{RunLog, Termination};

use crate::error::{BenchError, Result};
use crate::grid::Cell;

pub const MAGIC: &str = "# pcbench run log v1";

#[derive(Debug, Clone, PartialEq)]
pub struct LogHeader {
    pub cell: usize,
    pub run: usize,
    pub seed: u64,
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
}

impl LogHeader {
    pub fn new(cell: &Cell, run: usize, seed: u64) -> Self {
        Self {
            cell: cell.index,
            run,
            seed,
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
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub header: LogHeader,
    pub log: RunLog,
}

pub fn render(rec: &RunRecord) -> String {
    let h = &rec.header;
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\n');
    let fields: [(&str, String); 15] = [
        ("cell", h.cell.to_string()),
        ("run", h.run.to_string()),
        ("seed", h.seed.to_string()),
        ("problem", h.problem.to_string()),
        ("problem_name", h.problem_name.clone()),
        ("dimension", h.dimension.to_string()),
        ("mu", h.mu.to_string()),
        ("lambda", h.lambda.to_string()),
        ("lambda_rule", h.lambda_rule.clone()),
        ("pc", h.pc.to_string()),
        ("mutation", h.mutation.clone()),
        ("crossover", h.crossover.clone()),
        ("scheme", h.scheme.clone()),
        ("budget", h.budget.to_string()),
        ("target", h.target.to_string()),
    ];
    for (k, v) in fields {
        let _ = writeln!(out, "# {k}: {v}");
    }
    out.push_str("evals best\n");
    for e in &rec.log.events {
        let _ = writeln!(out, "{} {}", e.evals, e.best);
    }
    let _ = writeln!(out, "# final_evals: {}", rec.log.final_evals);
    let _ = writeln!(out, "# hit_target: {}", rec.log.hit_target);
    let _ = writeln!(out, "# termination: {}", rec.log.termination.label());
    out
}

pub fn parse(text: &str, origin: &Path) -> Result<RunRecord> {
    let bad = |message: String| BenchError::Parse {
        path: origin.to_path_buf(),
        message,
    };
    let mut lines = text.lines();
    if lines.next() != Some(MAGIC) {
        return Err(bad("missing run log header".into()));
    }
    let mut keys: BTreeMap<&str, &str> = BTreeMap::new();
    let mut events = Vec::new();
    let mut in_data = false;
    for line in lines {
        if let Some(kv) = line.strip_prefix("# ") {
            let (k, v) = kv
                .split_once(": ")
                .ok_or_else(|| bad(format!("malformed line {line:?}")))?;
            if keys.insert(k, v).is_some() {
                return Err(bad(format!("duplicate key {k}")));
            }
        } else if line == "evals best" {
            in_data = true;
        } else if in_data {
            let (e, b) = line
                .split_once(' ')
                .ok_or_else(|| bad(format!("malformed event {line:?}")))?;
            let evals = e.parse().map_err(|_| bad(format!("bad evals {e:?}")))?;
            let best = b.parse().map_err(|_| bad(format!("bad fitness {b:?}")))?;
            events.push(Improvement { evals, best });
        } else {
            return Err(bad(format!("unexpected line {line:?}")));
        }
    }
    fn get<T: std::str::FromStr>(keys: &BTreeMap<&str, &str>, k: &str) -> std::result::Result<T, String> {
        let v = keys.get(k).ok_or_else(|| format!("missing {k} (incomplete log?)"))?;
        v.parse().map_err(|_| format!("bad value for {k}: {v:?}"))
    }
    let header = (|| -> std::result::Result<LogHeader, String> {
        Ok(LogHeader {
            cell: get(&keys, "cell")?,
            run: get(&keys, "run")?,
            seed: get(&keys, "seed")?,
            problem: get(&keys, "problem")?,
            problem_name: get(&keys, "problem_name")?,
            dimension: get(&keys, "dimension")?,
            mu: get(&keys, "mu")?,
            lambda: get(&keys, "lambda")?,
            lambda_rule: get(&keys, "lambda_rule")?,
            pc: get(&keys, "pc")?,
            mutation: get(&keys, "mutation")?,
            crossover: get(&keys, "crossover")?,
            scheme: get(&keys, "scheme")?,
            budget: get(&keys, "budget")?,
            target: get(&keys, "target")?,
        })
    })()
    .map_err(bad)?;
    let termination: String = get(&keys, "termination").map_err(bad)?;
    let log = RunLog {
        events,
        final_evals: get(&keys, "final_evals").map_err(bad)?,
        budget: header.budget,
        hit_target: get(&keys, "hit_target").map_err(bad)?,
        termination: Termination::from_label(&termination)
            .ok_or_else(|| bad(format!("unknown termination {termination:?}")))?,
        trace: None,
    };
    if !log.is_well_formed() {
        return Err(bad("events are not strictly increasing or exceed the budget".into()));
    }
    Ok(RunRecord { header, log })
}

pub fn read(path: &Path) -> Result<RunRecord> {
    let text = std::fs::read_to_string(path).map_err(BenchError::io(path))?;
    parse(&text, path)
}

/// Writes atomically: a sibling temporary file is renamed over `path`.
pub fn write(path: &Path, rec: &RunRecord) -> Result<()> {
    let tmp = path.with_extension("log.tmp");
    std::fs::write(&tmp, render(rec)).map_err(BenchError::io(&tmp))?;
    std::fs::rename(&tmp, path).map_err(BenchError::io(path))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record() -> RunRecord {
        RunRecord {
            header: LogHeader {
                cell: 3,
                run: 1,
                seed: 99,
                problem: 18,
                problem_name: "LABS".into(),
                dimension: 20,
                mu: 10,
                lambda: 5,
                lambda_rule: "half".into(),
                pc: 0.95,
                mutation: "fast".into(),
                crossover: "two-point".into(),
                scheme: "population".into(),
                budget: 2000,
                target: f64::INFINITY,
            },
            log: RunLog {
                events: vec![
                    Improvement { evals: 1, best: 1.1764705882352942 },
                    Improvement { evals: 9, best: 2.5 },
                ],
                final_evals: 2000,
                budget: 2000,
                hit_target: false,
                termination: Termination::BudgetExhausted,
                trace: None,
            },
        }
    }

    #[test]
    fn round_trip_is_exact() {
        let rec = record();
        let text = render(&rec);
        let back = parse(&text, Path::new("x")).unwrap();
        assert_eq!(back, rec);
        assert_eq!(render(&back), text);
    }

    #[test]
    fn truncated_log_is_rejected() {
        let text = render(&record());
        let cut = &text[..text.find("# final_evals").unwrap()];
        assert!(parse(cut, Path::new("x")).is_err());
        assert!(parse("", Path::new("x")).is_err());
        assert!(parse(&text.replace("9 2.5", "9 x"), Path::new("x")).is_err());
        assert!(parse(&text.replace("9 2.5", "0 2.5"), Path::new("x")).is_err());
    }
}
