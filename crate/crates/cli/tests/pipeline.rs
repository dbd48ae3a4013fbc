use std::path::{Path, PathBuf};
use std::process::Command;

use pcbench::report::{parse_targets, ReportOptions, GAP};
use pcbench::runner::{log_path, MANIFEST};
use pcbench::{
    expand_grid, load_experiment, report, run_experiment, select_targets, BenchError, Catalog, ExperimentSpec,
    Manifest, ReportKind,
};

const TWO_CELLS: &str = r#"
name = "two-cells"
runs = 3
budget_multiplier = 5
master_seed = 42
target = "optimum"

[[problems]]
id = 2
dims = [16]

[grid]
mu = [4]
lambda = [1]
pc = [0.0, 0.5]
"#;

fn spec(text: &str) -> ExperimentSpec {
    ExperimentSpec::parse(text, Path::new("spec.toml")).unwrap()
}

fn all_logs(dir: &Path) -> Vec<(PathBuf, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![dir.join("runs")];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.push((p.strip_prefix(dir).unwrap().to_path_buf(), std::fs::read(&p).unwrap()));
            }
        }
    }
    out.sort();
    out
}

#[test]
fn two_cells_three_runs_give_six_logs_and_a_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let s = run_experiment(&spec(TWO_CELLS), &Catalog::builtin(), dir.path(), Some(2)).unwrap();
    assert_eq!((s.jobs, s.executed, s.reused, s.failed), (6, 6, 0, 0));
    assert_eq!(all_logs(dir.path()).len(), 6);
    let m = Manifest::load(dir.path()).unwrap();
    assert!(m.is_complete());
    assert_eq!(m.spec_hash, spec(TWO_CELLS).hash());
    assert_eq!(m.catalog_version, Catalog::builtin().version);
    assert_eq!(m.cell.len(), 2);
    assert!(m.cell.iter().all(|c| c.completed == 3 && c.status == "complete"));
}

#[test]
fn deleted_log_is_regenerated_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    let sp = spec(TWO_CELLS);
    run_experiment(&sp, &Catalog::builtin(), dir.path(), Some(1)).unwrap();
    let before = all_logs(dir.path());
    let victim = log_path(dir.path(), 1, 2);
    std::fs::remove_file(&victim).unwrap();
    let s = run_experiment(&sp, &Catalog::builtin(), dir.path(), Some(3)).unwrap();
    assert_eq!((s.executed, s.reused), (1, 5));
    assert_eq!(all_logs(dir.path()), before);
}

#[test]
fn truncated_log_is_rerun() {
    let dir = tempfile::tempdir().unwrap();
    let sp = spec(TWO_CELLS);
    run_experiment(&sp, &Catalog::builtin(), dir.path(), None).unwrap();
    let before = all_logs(dir.path());
    let victim = log_path(dir.path(), 0, 0);
    let text = std::fs::read_to_string(&victim).unwrap();
    std::fs::write(&victim, &text[..text.len() / 2]).unwrap();
    let s = run_experiment(&sp, &Catalog::builtin(), dir.path(), None).unwrap();
    assert_eq!(s.executed, 1);
    assert_eq!(all_logs(dir.path()), before);
}

#[test]
fn resume_with_a_different_spec_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    run_experiment(&spec(TWO_CELLS), &Catalog::builtin(), dir.path(), None).unwrap();
    let other = spec(&TWO_CELLS.replace("master_seed = 42", "master_seed = 43"));
    let err = run_experiment(&other, &Catalog::builtin(), dir.path(), None).unwrap_err();
    assert!(matches!(err, BenchError::Usage(_)), "{err}");
    assert!(err.to_string().contains("refusing to resume"));
    assert_eq!(err.exit_code(), 1);
}

#[test]
fn unwritable_output_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain-file");
    std::fs::write(&file, "x").unwrap();
    let err = run_experiment(&spec(TWO_CELLS), &Catalog::builtin(), &file.join("out"), None).unwrap_err();
    assert!(matches!(err, BenchError::Io { .. }), "{err}");
}

#[test]
fn failed_jobs_leave_cells_incomplete_and_reports_mark_gaps() {
    let dir = tempfile::tempdir().unwrap();
    let sp = spec(TWO_CELLS);
    // a directory where a log file should go makes that job fail
    std::fs::create_dir_all(log_path(dir.path(), 1, 1)).unwrap();
    let s = run_experiment(&sp, &Catalog::builtin(), dir.path(), None).unwrap();
    assert_eq!((s.failed, s.incomplete_cells), (1, 1));
    let m = Manifest::load(dir.path()).unwrap();
    assert!(!m.is_complete());
    assert_eq!(m.cell[1].status, "incomplete");
    assert_eq!(m.cell[1].completed, 2);
    let exp = load_experiment(dir.path()).unwrap();
    let r = report(&exp, ReportKind::ErtTable, &ReportOptions::default()).unwrap();
    assert_eq!(r.gaps, 1);
    assert!(r.text.lines().nth(2).unwrap().ends_with(&format!("{GAP}\t{GAP}\t{GAP}\t{GAP}")));
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let sp = spec(&TWO_CELLS.replace("pc = [0.0, 0.5]", "pc = [0.0, 0.3, 0.6, 0.9]"));
    run_experiment(&sp, &Catalog::builtin(), a.path(), Some(1)).unwrap();
    run_experiment(&sp, &Catalog::builtin(), b.path(), Some(4)).unwrap();
    assert_eq!(all_logs(a.path()), all_logs(b.path()));
    assert_eq!(
        std::fs::read(a.path().join(MANIFEST)).unwrap(),
        std::fs::read(b.path().join(MANIFEST)).unwrap()
    );
    let ea = load_experiment(a.path()).unwrap();
    let eb = load_experiment(b.path()).unwrap();
    for kind in ReportKind::ALL {
        let ra = report(&ea, kind, &ReportOptions::default()).unwrap();
        let rb = report(&eb, kind, &ReportOptions::default()).unwrap();
        assert_eq!(ra, rb, "{}", kind.label());
    }
}

#[test]
fn unreachable_target_gives_infinite_markers() {
    let dir = tempfile::tempdir().unwrap();
    let sp = spec(&TWO_CELLS.replace("target = \"optimum\"", "target = 1000").replace("budget_multiplier = 5", "budget_multiplier = 1"));
    run_experiment(&sp, &Catalog::builtin(), dir.path(), None).unwrap();
    let exp = load_experiment(dir.path()).unwrap();
    let r = report(&exp, ReportKind::ErtTable, &ReportOptions::default()).unwrap();
    assert_eq!(r.gaps, 0);
    for line in r.text.lines().skip(1) {
        let cols: Vec<&str> = line.split('\t').collect();
        assert_eq!(&cols[cols.len() - 4..], ["0", "0", "inf", "inf"]);
    }
    let r = report(&exp, ReportKind::NormalizedHeatmap, &ReportOptions::default()).unwrap();
    assert!(r.text.lines().skip(1).all(|l| l.ends_with("\tfailed")));
    let r = report(&exp, ReportKind::PcStarTable, &ReportOptions::default()).unwrap();
    assert!(r.text.lines().nth(1).unwrap().ends_with("\tfailed"));
}

#[test]
fn report_layouts() {
    let text = r#"
name = "layouts"
runs = 4
budget_multiplier = 10
master_seed = 5
[[problems]]
id = 2
dims = [12, 16]
[grid]
mu = [2, 4]
lambda = [1]
pc = [0.0, 0.5]
mutation = ["sbm", "fast"]
"#;
    let dir = tempfile::tempdir().unwrap();
    let sp = spec(text);
    let grid = expand_grid(&sp, &Catalog::builtin()).unwrap();
    assert_eq!(grid.cells.len(), 16);
    run_experiment(&sp, &Catalog::builtin(), dir.path(), None).unwrap();
    let exp = load_experiment(dir.path()).unwrap();
    let opts = ReportOptions::default();

    let pcs = report(&exp, ReportKind::PcStarTable, &opts).unwrap();
    let lines: Vec<&str> = pcs.text.lines().collect();
    assert_eq!(lines[0], "problem\tlambda_rule\tmutation\tcrossover\tscheme\tn\tmu=2\tmu=4");
    // rows: 2 mutations x 2 dimensions
    assert_eq!(lines.len(), 5);
    assert_eq!(pcs.gaps, 0);

    let ft = report(&exp, ReportKind::FixedTarget, &opts).unwrap();
    // targets 0..=n per cell: 8 cells with n=12, 8 with n=16
    assert_eq!(ft.text.lines().count(), 1 + 8 * 13 + 8 * 17);
    let cmp = report(&exp, ReportKind::MutationComparison, &opts).unwrap();
    assert_eq!(cmp.text.lines().count(), 1 + 8);
    assert_eq!(cmp.gaps, 0);
    let ert = report(&exp, ReportKind::ErtTable, &opts).unwrap();
    for line in ert.text.lines().skip(1) {
        let cols: Vec<&str> = line.split('\t').collect();
        let n: f64 = cols[1].parse().unwrap();
        let ert: f64 = cols[cols.len() - 2].parse().unwrap();
        let over: f64 = cols[cols.len() - 1].parse().unwrap();
        assert!((ert / (n * n) - over).abs() < 1e-12);
    }
}

#[test]
fn target_selection_on_solved_problem() {
    let text = TWO_CELLS.replace("id = 2", "id = 1").replace("budget_multiplier = 5", "budget_multiplier = 20");
    let dir = tempfile::tempdir().unwrap();
    run_experiment(&spec(&text), &Catalog::builtin(), dir.path(), None).unwrap();
    let exp = load_experiment(dir.path()).unwrap();
    let (targets, gaps) = select_targets(&exp);
    assert_eq!(gaps, 0);
    assert_eq!(targets.get(&(1, 16)), Some(&16.0));
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pcbench"))
}

#[test]
fn binary_verbs_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let spec_file = dir.path().join("spec.toml");
    std::fs::write(&spec_file, TWO_CELLS).unwrap();
    let out = dir.path().join("logs");

    let st = bin().arg("run").arg(&spec_file).arg("--out").arg(&out).env("PCBENCH_WORKERS", "2").status().unwrap();
    assert_eq!(st.code(), Some(0));

    let o = bin().arg("report").arg(&out).args(["--kind", "ert-table"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("problem\tdimension\tmu"));

    let tfile = dir.path().join("targets.tsv");
    let st = bin().arg("targets").arg(&out).arg("--out").arg(&tfile).status().unwrap();
    assert_eq!(st.code(), Some(0));
    let targets = parse_targets(&std::fs::read_to_string(&tfile).unwrap(), &tfile).unwrap();
    assert!(targets.contains_key(&(2, 16)));
    let st = bin()
        .arg("report")
        .arg(&out)
        .args(["--kind", "fixed-target", "--ft-targets", "0:16:4", "--targets"])
        .arg(&tfile)
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(0));

    // usage errors
    assert_eq!(bin().arg("report").arg(&out).args(["--kind", "pie"]).status().unwrap().code(), Some(1));
    assert_eq!(bin().arg("frobnicate").status().unwrap().code(), Some(1));
    assert_eq!(bin().arg("run").arg(dir.path().join("missing.toml")).arg("--out").arg(&out).status().unwrap().code(), Some(1));

    // incomplete data
    std::fs::remove_file(log_path(&out, 0, 0)).unwrap();
    let o = bin().arg("report").arg(&out).args(["--kind", "pc-star-table"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stdout).unwrap().contains(GAP));

    let o = bin().arg("validate").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(!String::from_utf8(o.stdout).unwrap().contains("[FAIL]"));
}
