use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pcbench::error::{EXIT_INCOMPLETE, EXIT_INVARIANT, EXIT_USAGE};
use pcbench::report::{parse_targets, render_targets};
use pcbench::validate::run_validation;
use pcbench::{
    load_experiment, report, run_experiment, select_targets, BenchError, Catalog, ExperimentSpec, ReportKind,
    ReportOptions, Result,
};

/// Benchmark (μ+λ) genetic algorithms with configurable crossover probability.
#[derive(Parser)]
#[command(name = "pcbench", version)]
struct Cli {
    /// Problem catalog to use instead of the built-in one.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run (or resume) every job of an experiment spec.
    Run {
        spec: PathBuf,
        /// Output directory for run logs and the manifest.
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; defaults to the number of CPUs.
        #[arg(long, env = "PCBENCH_WORKERS")]
        workers: Option<usize>,
    },
    /// Summarise a run-log directory.
    Report {
        logs: PathBuf,
        /// ert-table | normalized-heatmap-data | fixed-target | pc-star-table | mutation-comparison
        #[arg(long, value_parser = parse_kind)]
        kind: ReportKind,
        /// Targets file from `pcbench targets`, overriding the run targets.
        #[arg(long)]
        targets: Option<PathBuf>,
        /// Fixed-target grid FIRST:LAST:STEP.
        #[arg(long, value_parser = parse_range)]
        ft_targets: Option<(f64, f64, f64)>,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Select ERT targets: per problem, the largest 2% percentile of final best values.
    Targets {
        logs: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the problem-catalog self-tests.
    Validate,
}

fn parse_kind(s: &str) -> std::result::Result<ReportKind, String> {
    ReportKind::from_label(s).ok_or_else(|| {
        let all: Vec<&str> = ReportKind::ALL.iter().map(|k| k.label()).collect();
        format!("unknown report kind; expected one of {}", all.join(", "))
    })
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64, f64), String> {
    let parts: Vec<f64> = s
        .split(':')
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| format!("{e}"))?;
    match parts.as_slice() {
        [a, b, c] => Ok((*a, *b, *c)),
        _ => Err("expected FIRST:LAST:STEP".into()),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(BenchError::io(path)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cli: Cli) -> Result<()> {
    let catalog = match &cli.catalog {
        Some(path) => Catalog::load(path)?,
        None => Catalog::builtin(),
    };
    match cli.command {
        Command::Run { spec, out, workers } => {
            let spec = ExperimentSpec::load(&spec)?;
            let s = run_experiment(&spec, &catalog, &out, workers)?;
            eprintln!(
                "{} jobs: {} executed, {} reused, {} failed; {} cells ({} incomplete, {} skipped)",
                s.jobs, s.executed, s.reused, s.failed, s.cells, s.incomplete_cells, s.skipped_cells
            );
            if s.failed > 0 {
                return Err(BenchError::Incomplete(format!("{} runs failed", s.failed)));
            }
        }
        Command::Report {
            logs,
            kind,
            targets,
            ft_targets,
            out,
        } => {
            let exp = load_experiment(&logs)?;
            let targets = match targets {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(BenchError::io(&path))?;
                    Some(parse_targets(&text, &path)?)
                }
                None => None,
            };
            let opts = ReportOptions {
                targets,
                fixed_targets: ft_targets,
            };
            let r = report(&exp, kind, &opts)?;
            emit(&r.text, out.as_deref())?;
            if r.gaps > 0 {
                return Err(BenchError::Incomplete(format!(
                    "{} entries marked NA (missing runs or no target)",
                    r.gaps
                )));
            }
        }
        Command::Targets { logs, out } => {
            let exp = load_experiment(&logs)?;
            let (targets, gaps) = select_targets(&exp);
            emit(&render_targets(&targets), out.as_deref())?;
            if gaps > 0 {
                return Err(BenchError::Incomplete(format!("{gaps} incomplete cells were left out")));
            }
        }
        Command::Validate => {
            let checks = run_validation(&catalog)?;
            let failed = checks.iter().filter(|c| !c.passed).count();
            for c in &checks {
                println!("[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            if failed > 0 {
                return Err(BenchError::Invariant(format!("{failed} catalog checks failed")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let code = e.exit_code();
            debug_assert!([EXIT_USAGE, EXIT_INCOMPLETE, EXIT_INVARIANT].contains(&code));
            ExitCode::from(code as u8)
        }
    }
}
