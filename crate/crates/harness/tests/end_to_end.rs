use std::fs;
use std::path::Path;
use std::process::Command;

use firefly_harness::compare::{compare_variants_with, parse_compare_table, render_table};
use firefly_harness::output::{curve_file_name, emit_results_to, parse_median_curve, CURVE_DIR, MEDIAN_FILE};
use firefly_harness::{parse_config, parse_curve, run_experiment_with, Execution, ExperimentConfig};

fn config(text: &str) -> ExperimentConfig {
    parse_config(text).unwrap()
}

fn read_tree(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(dir).unwrap().display().to_string();
                out.push((rel, fs::read(&path).unwrap()));
            }
        }
    }
    out.sort();
    out
}

fn emit(cfg: &ExperimentConfig, execution: Execution, dir: &Path) {
    let (stats, reports) = run_experiment_with(cfg, execution).unwrap();
    emit_results_to(&stats, &reports, cfg, dir).unwrap();
}

const ELITIST_RASTRIGIN: &str = "benchmark = \"rastrigin\"\ndim = 3\nvariant = \"elitist\"\nrepetitions = 5\nbase_seed = 40\nmax_fes = 4000\n";

#[test]
fn emitted_files_are_byte_identical_across_runs_and_schedules() {
    let cfg = config(ELITIST_RASTRIGIN);
    let tmp = tempfile::tempdir().unwrap();
    let (a, b, c) = (tmp.path().join("a"), tmp.path().join("b"), tmp.path().join("c"));
    emit(&cfg, Execution::Parallel, &a);
    emit(&cfg, Execution::Parallel, &b);
    emit(&cfg, Execution::Sequential, &c);
    let first = read_tree(&a);
    assert_eq!(first.len(), 5 + 2);
    assert_eq!(first, read_tree(&b));
    assert_eq!(first, read_tree(&c));
}

#[test]
fn curve_files_match_traces_and_are_monotone() {
    let cfg = config(ELITIST_RASTRIGIN);
    let tmp = tempfile::tempdir().unwrap();
    let (_, reports) = run_experiment_with(&cfg, Execution::Parallel).unwrap();
    let (stats, _) = run_experiment_with(&cfg, Execution::Sequential).unwrap();
    emit_results_to(&stats, &reports, &cfg, tmp.path()).unwrap();
    for (r, report) in reports.iter().enumerate() {
        let text = fs::read_to_string(tmp.path().join(CURVE_DIR).join(curve_file_name(r))).unwrap();
        assert_eq!(text.lines().count(), report.trace.len() + 1);
        let curve = parse_curve(&text).unwrap();
        assert_eq!(curve, report.trace);
        assert!(curve.windows(2).all(|w| w[1].best_fitness <= w[0].best_fitness));
    }
}

#[test]
fn median_curve_is_the_elementwise_median_of_the_curve_files() {
    let cfg = config("benchmark = \"ackley\"\ndim = 2\nvariant = \"levy\"\nrepetitions = 4\nbase_seed = 2\nmax_fes = 3000\n");
    let tmp = tempfile::tempdir().unwrap();
    emit(&cfg, Execution::Parallel, tmp.path());
    let curves: Vec<Vec<f64>> = (0..4)
        .map(|r| {
            let text = fs::read_to_string(tmp.path().join(CURVE_DIR).join(curve_file_name(r))).unwrap();
            parse_curve(&text).unwrap().into_iter().map(|p| p.best_fitness).collect()
        })
        .collect();
    let median = parse_median_curve(&fs::read_to_string(tmp.path().join(MEDIAN_FILE)).unwrap()).unwrap();
    let shortest = curves.iter().map(Vec::len).min().unwrap();
    assert_eq!(median.len(), shortest);
    for (g, (gen, m)) in median.iter().enumerate() {
        assert_eq!(*gen, g as u64);
        // four values: mean of the middle pair, computed without sorting
        let col: Vec<f64> = curves.iter().map(|c| c[g]).collect();
        let total: f64 = col.iter().sum();
        let hi = col.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = col.iter().copied().fold(f64::INFINITY, f64::min);
        let expected = (total - hi - lo) / 2.0;
        assert!((m - expected).abs() <= 1e-12 * expected.abs().max(1e-300), "gen {g}: {m} vs {expected}");
    }
}

#[test]
fn comparison_table_parses_back_to_its_stats() {
    let base = config("benchmark = \"rastrigin\"\ndim = 5\nvariant = \"base\"\nrepetitions = 3\nbase_seed = 9\nmax_fes = 3000\n");
    let sa = config("benchmark = \"rastrigin\"\ndim = 5\nvariant = \"sa_like\"\nrepetitions = 3\nbase_seed = 9\nmax_fes = 3000\n");
    let rows = compare_variants_with(&[base.clone(), sa.clone()], Execution::Parallel).unwrap();
    let parsed = parse_compare_table(&render_table(&rows)).unwrap();
    assert_eq!(parsed.len(), 2);
    assert_eq!((parsed[0].variant.as_str(), parsed[1].variant.as_str()), ("base", "sa_like"));
    assert!(parsed.iter().all(|r| r.max_fes == 3000 && r.benchmark == "rastrigin" && r.dim == 5));
    for (row, cfg) in parsed.iter().zip([&base, &sa]) {
        let (stats, _) = run_experiment_with(cfg, Execution::Sequential).unwrap();
        assert!(row.matches(&stats), "{row:?} vs {stats:?}");
    }

    let single = compare_variants_with(&[base], Execution::Sequential).unwrap();
    assert_eq!(render_table(&single).lines().count(), 2);
}

#[test]
fn sphere_base_success_rate_baseline() {
    // pinned from the first verified run: every repetition reaches 1e-2
    let cfg = config("benchmark = \"sphere\"\nvariant = \"base\"\nrepetitions = 30\nbase_seed = 0\n");
    let (stats, _) = run_experiment_with(&cfg, Execution::Parallel).unwrap();
    assert_eq!(stats.success_rate, 1.0);
}

#[test]
fn every_variant_runs_through_the_harness() {
    for v in firefly_harness::Variant::ALL {
        let cfg = config(&format!(
            "benchmark = \"griewank\"\ndim = 3\nvariant = \"{v}\"\nrepetitions = 2\nbase_seed = 1\nmax_fes = 1500\n"
        ));
        let (stats, reports) = run_experiment_with(&cfg, Execution::Parallel).unwrap();
        assert_eq!(reports.len(), 2, "{v}");
        assert!(stats.min_best.is_finite(), "{v}");
        for r in &reports {
            assert!(r.fes_total <= 1500, "{v}");
        }
    }
}

fn firefly() -> Command {
    Command::new(env!("CARGO_BIN_EXE_firefly"))
}

#[test]
fn cli_exit_status() {
    let tmp = tempfile::tempdir().unwrap();
    let good = tmp.path().join("good.toml");
    fs::write(&good, "benchmark = \"sphere\"\nvariant = \"base\"\nrepetitions = 2\nbase_seed = 0\nmax_fes = 500\n").unwrap();
    let out = tmp.path().join("out");
    let status = firefly()
        .args(["run", "--config"])
        .arg(&good)
        .arg("--out")
        .arg(&out)
        .args(["--seed", "5"])
        .status()
        .unwrap();
    assert!(status.success());
    let summary = fs::read_to_string(out.join("summary.json")).unwrap();
    assert!(summary.contains("\"base_seed\": 5"));

    let bad = tmp.path().join("bad.toml");
    fs::write(&bad, "benchmark = \"sphere\"\nvariant = \"base\"\nrepetitions = 2\nbase_seed = 0\ngama = 1\n").unwrap();
    let output = firefly().args(["run", "--config"]).arg(&bad).output().unwrap();
    assert!(!output.status.success());
    assert!(String::from_utf8_lossy(&output.stderr).contains("gama"));

    let missing = firefly().args(["run", "--config", "/nonexistent/cfg.toml"]).output().unwrap();
    assert!(!missing.status.success());

    let listing = firefly().arg("list-benchmarks").output().unwrap();
    assert!(listing.status.success());
    assert!(String::from_utf8_lossy(&listing.stdout).contains("four_peaks"));

    let other = tmp.path().join("other.toml");
    fs::write(&other, "benchmark = \"ackley\"\nvariant = \"base\"\nrepetitions = 2\nbase_seed = 0\nmax_fes = 500\n").unwrap();
    let mismatch = firefly().args(["compare", "--configs"]).arg(&good).arg(&other).output().unwrap();
    assert!(!mismatch.status.success());
}
