use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use covclust::HurstFunction;
use covclust_cli::commands::{simulate_paths, SimulateOpts};
use covclust_cli::series::{ingest_series, IngestMode};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_covclust"));
    c.env_remove("COVCLUST_OUT_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

fn error_line(out: &Output) -> String {
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    err.trim_end().to_string()
}

#[test]
fn simulate_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = run(&["simulate", "--hurst", "const:0.5", "--n", "10", "--paths", "3", "--seed", "7", "--out", p.to_str().unwrap()]);
        assert!(out.status.success(), "{out:?}");
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(read(&a).lines().count(), 1 + 3 * 10);

    let opts = SimulateOpts {
        hurst: HurstFunction::Constant(0.5),
        n: 10,
        paths: 3,
        dt: 0.1,
        seed: 7,
        output: a.clone(),
    };
    let in_memory = simulate_paths(&opts).unwrap();
    assert_eq!(ingest_series(&a, IngestMode::Offline, 0.1).unwrap(), in_memory);
}

#[test]
fn simulate_rejects_bad_hurst() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["simulate", "--hurst", "const:1.5", "--n", "10", "--out-dir", dir.path().to_str().unwrap()]);
    assert!(error_line(&out).starts_with("error:invalid-input:"));
    let out = run(&["simulate", "--hurst", "wiggly", "--out-dir", dir.path().to_str().unwrap()]);
    assert!(error_line(&out).starts_with("error:config:"));
    assert!(!dir.path().join("series.csv").exists());
}

fn assignments(path: &Path) -> Vec<(String, usize, bool)> {
    read(path)
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].to_string(), f[1].parse().unwrap(), f[2] == "1")
        })
        .collect()
}

#[test]
fn cluster_recovers_fixture_groups() {
    let truth: HashMap<String, String> = read(&fixture("two_groups_truth.csv"))
        .lines()
        .skip(1)
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.to_string(), b.to_string())
        })
        .collect();
    let dir = tempfile::tempdir().unwrap();
    for mode in ["offline", "online"] {
        let out_path = dir.path().join(format!("{mode}.csv"));
        let input = fixture("two_groups.csv");
        let out = run(&[
            "cluster", "--input", input.to_str().unwrap(), "--kappa", "2", "--mode", mode, "--log-star",
            "--out", out_path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{out:?}");
        let rows = assignments(&out_path);
        assert_eq!(rows.len(), 6);
        assert_eq!(rows.iter().filter(|r| r.2).count(), 2);
        for a in &rows {
            for b in &rows {
                assert_eq!(a.1 == b.1, truth[&a.0] == truth[&b.0], "{mode}: {} vs {}", a.0, b.0);
            }
        }
        assert!(rows.iter().all(|r| r.1 == 1 || r.1 == 2));

        let again = dir.path().join("again.csv");
        run(&["cluster", "--input", input.to_str().unwrap(), "--kappa", "2", "--mode", mode, "--log-star", "--out", again.to_str().unwrap()]);
        assert_eq!(read(&again), read(&out_path));
    }
}

#[test]
fn kappa_equal_to_n_gives_singletons() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("a.csv");
    let input = fixture("two_groups.csv");
    let out = run(&["cluster", "--input", input.to_str().unwrap(), "--kappa", "6", "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    let mut labels: Vec<usize> = assignments(&out_path).iter().map(|r| r.1).collect();
    labels.sort_unstable();
    assert_eq!(labels, vec![1, 2, 3, 4, 5, 6]);
    let out = run(&["cluster", "--input", input.to_str().unwrap(), "--kappa", "7", "--out", out_path.to_str().unwrap()]);
    assert!(error_line(&out).starts_with("error:infeasible:"));
}

#[test]
fn cluster_reports_parse_errors_with_lines() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.csv");
    std::fs::write(&input, "series_id,t_index,value\na,0,1\na,1,2\nb,0,1\na,1,3\n").unwrap();
    let out = run(&["cluster", "--input", input.to_str().unwrap(), "--kappa", "1", "--out-dir", dir.path().to_str().unwrap()]);
    let line = error_line(&out);
    assert!(line.starts_with("error:parse:"), "{line}");
    assert!(line.contains(":5:"), "{line}");

    let out = run(&["cluster", "--input", "/nonexistent/file.csv", "--kappa", "1"]);
    assert!(error_line(&out).starts_with("error:io:"));
}

#[test]
fn ragged_input_depends_on_mode() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("ragged.csv");
    let mut text = String::from("series_id,t_index,value\n");
    for (id, n) in [("a", 5), ("b", 8)] {
        for k in 0..n {
            text.push_str(&format!("{id},{k},{}\n", (k as f64 * 0.37).sin()));
        }
    }
    std::fs::write(&input, text).unwrap();
    let ok = run(&["ingest-check", "--input", input.to_str().unwrap(), "--mode", "online"]);
    assert!(ok.status.success());
    assert!(String::from_utf8(ok.stdout).unwrap().contains("2 series"));
    let bad = run(&["ingest-check", "--input", input.to_str().unwrap(), "--mode", "offline"]);
    assert!(error_line(&bad).contains("equal lengths"));
}

fn experiment(dir: &Path, seeds: &str) -> Output {
    run(&[
        "experiment", "--case", "sin", "--seeds", seeds, "--epochs", "3,12", "--paths-per-group", "3",
        "--out-dir", dir.to_str().unwrap(),
    ])
}

#[test]
fn experiment_outputs_merge_across_seed_lists() {
    let whole = tempfile::tempdir().unwrap();
    let left = tempfile::tempdir().unwrap();
    let right = tempfile::tempdir().unwrap();
    assert!(experiment(whole.path(), "0..4").status.success());
    assert!(experiment(left.path(), "0,2").status.success());
    assert!(experiment(right.path(), "1,3").status.success());

    let rows = |d: &Path| -> Vec<String> { read(&d.join("rates.csv")).lines().skip(1).map(String::from).collect() };
    let mut merged = rows(left.path());
    merged.extend(rows(right.path()));
    merged.sort_by_key(|l| {
        let f: Vec<u64> = l.split(',').take(2).map(|x| x.parse().unwrap()).collect();
        (f[0], f[1])
    });
    assert_eq!(merged, rows(whole.path()));

    let summary = read(&whole.path().join("summary.csv"));
    assert_eq!(summary.lines().next(), Some("t,mean_rate,std_rate"));
    assert_eq!(summary.lines().count(), 3);
}

#[test]
fn experiment_with_no_seeds_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = experiment(dir.path(), "");
    assert!(error_line(&out).starts_with("error:invalid-input:"));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn config_file_and_env_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"hurst": "sin:0.2:1", "n": 12, "paths": 2, "seed": 5}"#).unwrap();
    let out = bin()
        .args(["--config", cfg.to_str().unwrap(), "simulate", "--paths", "4"])
        .env("COVCLUST_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let text = read(&dir.path().join("series.csv"));
    assert_eq!(text.lines().count(), 1 + 4 * 12);

    std::fs::write(&cfg, r#"{"hurst": "const:0.5", "colour": "blue"}"#).unwrap();
    let out = run(&["--config", cfg.to_str().unwrap(), "simulate"]);
    assert!(error_line(&out).starts_with("error:parse:"));
}
