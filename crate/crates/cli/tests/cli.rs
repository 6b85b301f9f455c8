//! Black-box tests of the grapgt binary: flag handling, golden outputs,
//! exit codes, determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const SIGN_NONE: &str = include_str!("../../core/tests/fixtures/sign_none.csv");
const SIGN_SD: &str = include_str!("../../core/tests/fixtures/sign_sd.csv");

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn grapgt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grapgt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn thresholds_sd_row() {
    let table1 = fixture("table1.csv");
    let out = grapgt(&["thresholds", table1.to_str().unwrap(), "--mode", "sd"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let printed = [0.184, 0.596, 0.276, 0.368];
    for (line, (name, want)) in text
        .lines()
        .zip(["a1", "a2", "a3", "a4"].iter().zip(printed))
    {
        let mut parts = line.split_whitespace();
        assert_eq!(parts.next().unwrap(), *name);
        let sigma: f64 = parts.next().unwrap().parse().unwrap();
        assert!((sigma - want).abs() <= 0.001, "{name}: {sigma} vs {want}");
    }
}

#[test]
fn thresholds_none_is_all_zero() {
    let table1 = fixture("table1.csv");
    let out = grapgt(&["thresholds", table1.to_str().unwrap(), "--mode", "none"]);
    assert!(out.status.success());
    for line in stdout(&out).lines() {
        let sigma: f64 = line.split_whitespace().nth(1).unwrap().parse().unwrap();
        assert_eq!(sigma, 0.0);
    }
}

#[test]
fn thresholds_cv_zero_mean_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zm.csv");
    std::fs::write(&path, "x,y\n1,-1\n2,1\n3,0\n").unwrap();
    let out = grapgt(&["thresholds", path.to_str().unwrap(), "--mode", "cv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stderr(&out).contains("ZeroMean"),
        "stderr: {}",
        stderr(&out)
    );
}

#[test]
fn transform_matches_golden_tables() {
    let table1 = fixture("table1.csv");
    let none = grapgt(&["transform", table1.to_str().unwrap(), "--mode", "none"]);
    assert!(none.status.success());
    assert_eq!(stdout(&none), SIGN_NONE);

    let sd = grapgt(&["transform", table1.to_str().unwrap(), "--mode", "sd"]);
    assert!(sd.status.success());
    assert_eq!(stdout(&sd), SIGN_SD);
}

#[test]
fn transform_constant_data_is_all_o() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("const.csv");
    std::fs::write(&path, "x,y\n1,5\n1,5\n1,5\n").unwrap();
    let out = grapgt(&["transform", path.to_str().unwrap(), "--mode", "none"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "x,y\no,o\no,o\n");
}

#[test]
fn mine_graph_reports_published_pattern() {
    let table1 = fixture("table1.csv");
    let out = grapgt(&[
        "mine",
        table1.to_str().unwrap(),
        "--semantics",
        "graph",
        "--min-supp",
        "0.625",
        "--mode",
        "none",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let found = v["patterns"].as_array().unwrap().iter().any(|p| {
        let items = p["items"].as_array().unwrap();
        items.len() == 2
            && items[0]["attr"] == "a1"
            && items[0]["dir"] == ">="
            && items[1]["attr"] == "a2"
            && items[1]["dir"] == ">="
            && p["support"].as_f64().unwrap() == 0.625
    });
    assert!(found, "missing (a1>=,a2>=)@0.625 in {v}");
}

#[test]
fn mine_with_sd_thresholds_drops_pattern() {
    let table1 = fixture("table1.csv");
    let out = grapgt(&[
        "mine",
        table1.to_str().unwrap(),
        "--min-supp",
        "0.375",
        "--mode",
        "sd",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let found = v["patterns"].as_array().unwrap().iter().any(|p| {
        let items = p["items"].as_array().unwrap();
        items.len() == 2 && items[0]["attr"] == "a1" && items[1]["attr"] == "a2"
    });
    assert!(!found, "(a1,a2) pair must be filtered: {v}");
}

#[test]
fn mine_csv_format() {
    let table1 = fixture("table1.csv");
    let out = grapgt(&[
        "mine",
        table1.to_str().unwrap(),
        "--min-supp",
        "0.625",
        "--format",
        "csv",
        "--no-singletons",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("items,support,size,complement_support\n"));
    assert!(text.contains("a1>=;a2>=,0.625,2,"));
}

#[test]
fn mine_named_errors_exit_1() {
    let table1 = fixture("table1.csv");
    let out = grapgt(&[
        "mine",
        table1.to_str().unwrap(),
        "--semantics",
        "temporal",
        "--min-supp",
        "0.4",
        "--no-temporal-order",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("NotTemporal"));

    let out = grapgt(&[
        "mine",
        table1.to_str().unwrap(),
        "--min-supp",
        "0.4",
        "--closed-only",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("UnsupportedFilter"));

    let out = grapgt(&["mine", "missing-file.csv", "--min-supp", "0.4"]);
    assert_eq!(out.status.code(), Some(1));

    let out = grapgt(&["mine", table1.to_str().unwrap(), "--min-supp", "1.5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_1_help_exits_0() {
    let out = grapgt(&["mine"]); // missing required --min-supp and input
    assert_eq!(out.status.code(), Some(1));
    let out = grapgt(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn generate_is_deterministic_per_seed() {
    let args = [
        "generate",
        "--rows",
        "30",
        "--attrs",
        "6",
        "--signal-groups",
        "2",
        "--noise",
        "0.4",
        "--seed",
        "9",
    ];
    let a = grapgt(&args);
    let b = grapgt(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let mut other = args;
    other[10] = "10";
    let c = grapgt(&other);
    assert_ne!(a.stdout, c.stdout);

    let bad = grapgt(&["generate", "--rows", "1", "--attrs", "2"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn generated_comonotone_group_mines_to_full_pattern() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("synth.csv");
    let out = grapgt(&[
        "generate",
        "--rows",
        "8",
        "--attrs",
        "4",
        "--signal-groups",
        "1",
        "--noise",
        "0",
        "--seed",
        "1",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let mined = grapgt(&[
        "mine",
        path.to_str().unwrap(),
        "--semantics",
        "graph",
        "--min-supp",
        "1.0",
        "--mode",
        "none",
    ]);
    assert!(mined.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&mined)).unwrap();
    let full = v["patterns"].as_array().unwrap().iter().any(|p| {
        p["size"] == 4
            && p["support"].as_f64().unwrap() == 1.0
            && p["items"]
                .as_array()
                .unwrap()
                .iter()
                .all(|it| it["dir"] == ">=")
    });
    assert!(full, "full 4-item pattern at support 1 expected: {v}");
}

#[test]
fn bench_sweep_and_empty_config() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(fixture("table1.csv"), dir.path().join("table1.csv")).unwrap();
    let config = dir.path().join("bench.json");
    std::fs::write(
        &config,
        r#"{
            "datasets": [{"id": "table1", "path": "table1.csv", "temporal": true}],
            "semantics": ["graph"],
            "modes": ["none", "sd"],
            "min_supps": [0.1, 0.2, 0.3, 0.4, 0.5]
        }"#,
    )
    .unwrap();
    let out = grapgt(&["bench", config.to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 10, "5 min_supps x 2 modes: {text}");

    // pattern counts non-increasing in min_supp for each mode, and
    // reduction percentage present and non-negative on sd rows
    let mut per_mode: std::collections::HashMap<&str, Vec<(f64, usize)>> = Default::default();
    for row in &rows {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols[8], "", "no run errors expected: {row}");
        let mode = cols[2];
        let min_supp: f64 = cols[3].parse().unwrap();
        let patterns: usize = cols[4].parse().unwrap();
        per_mode.entry(mode).or_default().push((min_supp, patterns));
        if mode == "sd" {
            let reduction: f64 = cols[7].parse().unwrap();
            assert!(reduction >= 0.0);
        }
    }
    for (_, mut counts) in per_mode {
        counts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for w in counts.windows(2) {
            assert!(w[1].1 <= w[0].1, "counts must not grow with min_supp");
        }
    }

    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, r#"{"datasets": [], "min_supps": []}"#).unwrap();
    let out = grapgt(&["bench", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 1, "header only");

    // a run failure is recorded in the row, harness continues
    let broken = dir.path().join("broken.json");
    std::fs::write(
        &broken,
        r#"{
            "datasets": [
                {"id": "bad", "path": "missing.csv"},
                {"id": "table1", "path": "table1.csv"}
            ],
            "modes": ["none"],
            "min_supps": [0.5]
        }"#,
    )
    .unwrap();
    let out = grapgt(&["bench", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].split(',').nth(8).unwrap().contains("missing.csv"));
    assert_eq!(rows[1].split(',').nth(8).unwrap(), "");
}

#[test]
fn mine_output_file_and_workers_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let table1 = fixture("table1.csv");
    let out1 = dir.path().join("w1.json");
    let out4 = dir.path().join("w4.json");
    for (workers, path) in [("1", &out1), ("4", &out4)] {
        let out = grapgt(&[
            "mine",
            table1.to_str().unwrap(),
            "--min-supp",
            "0.25",
            "--mode",
            "gap-mean",
            "--workers",
            workers,
            "--output",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out4).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "worker count must not change the output bytes");
}

#[test]
fn workers_env_variable_is_honored() {
    let table1 = fixture("table1.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_grapgt"))
        .args(["mine", table1.to_str().unwrap(), "--min-supp", "0.5"])
        .env("GRAPGT_WORKERS", "3")
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", stderr(&out));
}
