//! Plot-ready tab-separated summaries of a run-log directory.
//!
//! Every report starts with a one-line header. Missing data is written as
//! `NA` and counted in [`Report::gaps`]; an infinite ERT (no run reached the
//! target) is written as `inf`. Column schemas:
//!
//! | kind | columns |
//! |------|---------|
//! | `ert-table` | problem, dimension, algorithm columns, target, runs, successes, success_rate, ert, ert_over_n2 |
//! | `normalized-heatmap-data` | problem, dimension, algorithm columns, value (`ERT/ERT_best` capped at 40, or `failed`) |
//! | `fixed-target` | problem, dimension, algorithm columns, target, mean_evals, gradient |
//! | `pc-star-table` | problem, lambda_rule, mutation, crossover, scheme, n, then one `mu=<μ>` column per population size |
//! | `mutation-comparison` | problem, dimension, mu, lambda, lambda_rule, pc, crossover, scheme, target, ert_sbm, ert_fast, value |
//!
//! The algorithm columns are mu, lambda, lambda_rule, pc, mutation, crossover, scheme.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use pcbench_core::analytics::{
    best_pc, compute_ert, curve_gradient, fixed_target_curve, normalize_ert, relative_ert_difference,
    select_target, ComparisonCell, ErtTable, NormalizedCell,
};
use pcbench_core::RunLog;

use crate::error::{BenchError, Result};
use crate::logfile;
use crate::runner::{log_path, CellRecord, Manifest};

pub const GAP: &str = "NA";
const ALG_COLUMNS: &str = "mu\tlambda\tlambda_rule\tpc\tmutation\tcrossover\tscheme";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportKind {
    ErtTable,
    NormalizedHeatmap,
    FixedTarget,
    PcStarTable,
    MutationComparison,
}

impl ReportKind {
    pub const ALL: [ReportKind; 5] = [
        ReportKind::ErtTable,
        ReportKind::NormalizedHeatmap,
        ReportKind::FixedTarget,
        ReportKind::PcStarTable,
        ReportKind::MutationComparison,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            ReportKind::ErtTable => "ert-table",
            ReportKind::NormalizedHeatmap => "normalized-heatmap-data",
            ReportKind::FixedTarget => "fixed-target",
            ReportKind::PcStarTable => "pc-star-table",
            ReportKind::MutationComparison => "mutation-comparison",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        if s == "normalized-heatmap" {
            return Some(ReportKind::NormalizedHeatmap);
        }
        Self::ALL.into_iter().find(|k| k.label() == s)
    }
}

#[derive(Debug, Clone)]
pub struct CellData {
    pub record: CellRecord,
    pub logs: Vec<RunLog>,
    pub complete: bool,
}

#[derive(Debug, Clone)]
pub struct Experiment {
    pub manifest: Manifest,
    pub cells: Vec<CellData>,
}

/// Reads the manifest and every readable log of `dir`.
pub fn load_experiment(dir: &Path) -> Result<Experiment> {
    let manifest = Manifest::load(dir)?;
    let cells = manifest
        .cell
        .iter()
        .map(|rec| {
            let logs: Vec<RunLog> = (0..manifest.runs_per_cell)
                .filter_map(|run| logfile::read(&log_path(dir, rec.index, run)).ok())
                .filter(|r| r.header.cell == rec.index)
                .map(|r| r.log)
                .collect();
            CellData {
                complete: logs.len() == manifest.runs_per_cell,
                record: rec.clone(),
                logs,
            }
        })
        .collect();
    Ok(Experiment { manifest, cells })
}

/// Targets per `(problem, dimension)`.
pub type Targets = BTreeMap<(u32, usize), f64>;

pub fn render_targets(targets: &Targets) -> String {
    let mut out = String::from("problem\tdimension\ttarget\n");
    for ((p, n), t) in targets {
        let _ = writeln!(out, "{p}\t{n}\t{t}");
    }
    out
}

pub fn parse_targets(text: &str, origin: &Path) -> Result<Targets> {
    let bad = |message: String| BenchError::Parse {
        path: origin.to_path_buf(),
        message,
    };
    let mut lines = text.lines();
    if lines.next() != Some("problem\tdimension\ttarget") {
        return Err(bad("expected header problem<TAB>dimension<TAB>target".into()));
    }
    let mut out = Targets::new();
    for line in lines.filter(|l| !l.trim().is_empty()) {
        let cols: Vec<&str> = line.split('\t').collect();
        let parsed = match cols.as_slice() {
            [p, n, t] => p.parse().ok().zip(n.parse().ok()).zip(t.parse().ok()),
            _ => None,
        };
        let ((p, n), t) = parsed.ok_or_else(|| bad(format!("malformed line {line:?}")))?;
        out.insert((p, n), t);
    }
    Ok(out)
}

/// Target selection: per `(problem, dimension)`, the largest over algorithms
/// of the 2% percentile of the final best values. Incomplete cells are left
/// out and counted as gaps.
pub fn select_targets(exp: &Experiment) -> (Targets, usize) {
    let mut finals: BTreeMap<(u32, usize), Vec<Vec<f64>>> = BTreeMap::new();
    let mut gaps = 0;
    for c in &exp.cells {
        if !c.complete {
            gaps += 1;
            continue;
        }
        let best: Vec<f64> = c.logs.iter().filter_map(RunLog::best).collect();
        finals
            .entry((c.record.problem, c.record.dimension))
            .or_default()
            .push(best);
    }
    let targets = finals
        .into_iter()
        .filter_map(|(k, v)| select_target(&v).ok().map(|t| (k, t)))
        .collect();
    (targets, gaps)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub gaps: usize,
}

#[derive(Debug, Clone, Default)]
pub struct ReportOptions {
    /// Overrides the targets recorded in the logs.
    pub targets: Option<Targets>,
    /// Fixed-target grid `(first, last, step)`; defaults to `0..=target` in unit steps.
    pub fixed_targets: Option<(f64, f64, f64)>,
}

fn alg_columns(r: &CellRecord) -> String {
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}",
        r.mu, r.lambda, r.lambda_rule, r.pc, r.mutation, r.crossover, r.scheme
    )
}

fn target_of(c: &CellData, opts: &ReportOptions) -> f64 {
    opts.targets
        .as_ref()
        .and_then(|t| t.get(&(c.record.problem, c.record.dimension)).copied())
        .unwrap_or(c.record.target)
}

/// ERT of a complete cell with a finite target.
fn cell_ert(c: &CellData, opts: &ReportOptions) -> Option<(f64, pcbench_core::analytics::ErtEstimate)> {
    let target = target_of(c, opts);
    if !c.complete || !target.is_finite() {
        return None;
    }
    compute_ert(&c.logs, target).ok().map(|e| (target, e))
}

pub fn report(exp: &Experiment, kind: ReportKind, opts: &ReportOptions) -> Result<Report> {
    Ok(match kind {
        ReportKind::ErtTable => ert_table(exp, opts),
        ReportKind::NormalizedHeatmap => normalized(exp, opts),
        ReportKind::FixedTarget => fixed_target(exp, opts)?,
        ReportKind::PcStarTable => pc_star(exp, opts),
        ReportKind::MutationComparison => mutation_comparison(exp, opts),
    })
}

fn ert_table(exp: &Experiment, opts: &ReportOptions) -> Report {
    let mut text = format!(
        "problem\tdimension\t{ALG_COLUMNS}\ttarget\truns\tsuccesses\tsuccess_rate\tert\tert_over_n2\n"
    );
    let mut gaps = 0;
    for c in &exp.cells {
        let r = &c.record;
        let head = format!("{}\t{}\t{}", r.problem, r.dimension, alg_columns(r));
        match cell_ert(c, opts) {
            Some((target, e)) => {
                let n2 = (r.dimension * r.dimension) as f64;
                let _ = writeln!(
                    text,
                    "{head}\t{target}\t{}\t{}\t{}\t{}\t{}",
                    e.runs,
                    e.successes,
                    e.success_rate,
                    e.ert,
                    e.ert / n2
                );
            }
            None => {
                gaps += 1;
                let _ = writeln!(
                    text,
                    "{head}\t{}\t{}\t{GAP}\t{GAP}\t{GAP}\t{GAP}",
                    target_of(c, opts),
                    c.logs.len()
                );
            }
        }
    }
    Report { text, gaps }
}

fn normalized(exp: &Experiment, opts: &ReportOptions) -> Report {
    let mut table = ErtTable::default();
    for c in &exp.cells {
        if let Some((target, e)) = cell_ert(c, opts) {
            table.push(&c.record.index.to_string(), c.record.problem, c.record.dimension, target, &e);
        }
    }
    let by_cell: BTreeMap<String, NormalizedCell> = normalize_ert(&table)
        .into_iter()
        .map(|row| (row.algorithm, row.cell))
        .collect();
    let mut text = format!("problem\tdimension\t{ALG_COLUMNS}\tvalue\n");
    let mut gaps = 0;
    for c in &exp.cells {
        let r = &c.record;
        let value = match by_cell.get(&r.index.to_string()) {
            Some(NormalizedCell::Value(v)) => v.to_string(),
            Some(NormalizedCell::Failed) => "failed".into(),
            None => {
                gaps += 1;
                GAP.into()
            }
        };
        let _ = writeln!(text, "{}\t{}\t{}\t{value}", r.problem, r.dimension, alg_columns(r));
    }
    Report { text, gaps }
}

fn target_grid(first: f64, last: f64, step: f64) -> Vec<f64> {
    let count = ((last - first) / step + 1e-9).floor() as usize + 1;
    (0..count).map(|k| first + k as f64 * step).collect()
}

fn fixed_target(exp: &Experiment, opts: &ReportOptions) -> Result<Report> {
    if let Some((a, b, s)) = opts.fixed_targets {
        if !(s > 0.0 && b >= a) {
            return Err(BenchError::Usage("fixed-target grid needs first <= last and step > 0".into()));
        }
    }
    let mut text = format!("problem\tdimension\t{ALG_COLUMNS}\ttarget\tmean_evals\tgradient\n");
    let mut gaps = 0;
    for c in &exp.cells {
        let r = &c.record;
        let head = format!("{}\t{}\t{}", r.problem, r.dimension, alg_columns(r));
        let targets = match opts.fixed_targets {
            Some((a, b, s)) => target_grid(a, b, s),
            None => {
                let t = target_of(c, opts);
                if !t.is_finite() || t < 0.0 {
                    gaps += 1;
                    let _ = writeln!(text, "{head}\t{GAP}\t{GAP}\t{GAP}");
                    continue;
                }
                target_grid(0.0, t.floor(), 1.0)
            }
        };
        if !c.complete {
            gaps += 1;
            for t in targets {
                let _ = writeln!(text, "{head}\t{t}\t{GAP}\t{GAP}");
            }
            continue;
        }
        let curve = fixed_target_curve(&c.logs, &targets)?;
        let grad = curve_gradient(&curve);
        for (k, (t, m)) in targets.iter().zip(&curve).enumerate() {
            let g = if k == 0 { "-".to_string() } else { grad[k - 1].to_string() };
            let _ = writeln!(text, "{head}\t{t}\t{m}\t{g}");
        }
    }
    Ok(Report { text, gaps })
}

fn pc_star(exp: &Experiment, opts: &ReportOptions) -> Report {
    type Row = (u32, String, String, String, String, usize);
    // row key -> mu -> (pc, ert) samples, None when a cell is unusable
    let mut rows: BTreeMap<Row, BTreeMap<usize, Option<Vec<(f64, f64)>>>> = BTreeMap::new();
    let mut mus = BTreeSet::new();
    for c in &exp.cells {
        let r = &c.record;
        mus.insert(r.mu);
        let key = (
            r.problem,
            r.lambda_rule.clone(),
            r.mutation.clone(),
            r.crossover.clone(),
            r.scheme.clone(),
            r.dimension,
        );
        let slot = rows.entry(key).or_default().entry(r.mu).or_insert_with(|| Some(Vec::new()));
        match (cell_ert(c, opts), slot.as_mut()) {
            (Some((_, e)), Some(v)) => v.push((r.pc, e.ert)),
            _ => *slot = None,
        }
    }
    let mut text = String::from("problem\tlambda_rule\tmutation\tcrossover\tscheme\tn");
    for mu in &mus {
        let _ = write!(text, "\tmu={mu}");
    }
    text.push('\n');
    let mut gaps = 0;
    for ((p, rule, m, x, s, n), by_mu) in rows {
        let _ = write!(text, "{p}\t{rule}\t{m}\t{x}\t{s}\t{n}");
        for mu in &mus {
            let entry = match by_mu.get(mu) {
                Some(Some(samples)) => match best_pc(samples) {
                    Ok(pc) => pc.to_string(),
                    Err(_) => "failed".into(),
                },
                _ => {
                    gaps += 1;
                    GAP.into()
                }
            };
            let _ = write!(text, "\t{entry}");
        }
        text.push('\n');
    }
    Report { text, gaps }
}

fn mutation_comparison(exp: &Experiment, opts: &ReportOptions) -> Report {
    type Key = (u32, usize, usize, usize, String, String, String, String);
    let mut pairs: BTreeMap<Key, [Option<&CellData>; 2]> = BTreeMap::new();
    for c in &exp.cells {
        let r = &c.record;
        let slot = match r.mutation.as_str() {
            "sbm" => 0,
            "fast" => 1,
            _ => continue,
        };
        let key = (
            r.problem,
            r.dimension,
            r.mu,
            r.lambda,
            r.lambda_rule.clone(),
            r.pc.to_string(),
            r.crossover.clone(),
            r.scheme.clone(),
        );
        pairs.entry(key).or_default()[slot] = Some(c);
    }
    let mut text = String::from(
        "problem\tdimension\tmu\tlambda\tlambda_rule\tpc\tcrossover\tscheme\ttarget\tert_sbm\tert_fast\tvalue\n",
    );
    let mut gaps = 0;
    for ((p, n, mu, lambda, rule, pc, x, s), [sbm, fast]) in pairs {
        let head = format!("{p}\t{n}\t{mu}\t{lambda}\t{rule}\t{pc}\t{x}\t{s}");
        let sbm = sbm.and_then(|c| cell_ert(c, opts));
        let fast = fast.and_then(|c| cell_ert(c, opts));
        match (sbm, fast) {
            (Some((t, es)), Some((_, ef))) => {
                let value = match relative_ert_difference(ef.ert, es.ert) {
                    ComparisonCell::Value(v) => v.to_string(),
                    ComparisonCell::FastFailed => "fast-failed".into(),
                    ComparisonCell::SbmFailed => "sbm-failed".into(),
                    ComparisonCell::BothFailed => "both-failed".into(),
                };
                let _ = writeln!(text, "{head}\t{t}\t{}\t{}\t{value}", es.ert, ef.ert);
            }
            _ => {
                gaps += 1;
                let _ = writeln!(text, "{head}\t{GAP}\t{GAP}\t{GAP}\t{GAP}");
            }
        }
    }
    Report { text, gaps }
}
