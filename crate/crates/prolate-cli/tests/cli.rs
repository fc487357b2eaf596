//! CLI behavior: exit codes, output determinism, schema validity.

use std::process::{Command, Output};

fn prolate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prolate"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn spectrum_single_axis_sums_to_trace() {
    let out = prolate(&["spectrum", "--n", "10", "--m", "4", "--k", "2"]);
    assert!(out.status.success());
    let body = stdout(&out);
    let mut lines = body.lines();
    assert_eq!(lines.next().unwrap(), "index,eigenvalue");
    let values: Vec<f64> = lines
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 4);
    let sum: f64 = values.iter().sum();
    assert!((sum - 2.0).abs() < 1e-10);
}

#[test]
fn spectrum_two_axes_has_product_size() {
    let out = prolate(&[
        "spectrum", "--n", "10", "--m", "4", "--k", "2", "--n", "10", "--m", "4", "--k", "2",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 17); // header + 4*4 rows
}

#[test]
fn invalid_band_exits_2_citing_bound() {
    let out = prolate(&["spectrum", "--n", "10", "--m", "4", "--k", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("2K+1 < N"), "stderr was: {err}");
}

#[test]
fn unknown_figure_exits_2_listing_names() {
    let out = prolate(&["figure", "no-such-figure"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    for name in [
        "fixed-tbw-vs-N",
        "spectra-vs-N",
        "eig-vs-mw",
        "tensor-multiplicity",
    ] {
        assert!(err.contains(name), "stderr missing {name}: {err}");
    }
}

#[test]
fn csv_bodies_are_deterministic() {
    let args = ["spectrum", "--n", "32", "--m", "12", "--k", "4"];
    let a = prolate(&args);
    let b = prolate(&args);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn figure_csv_is_deterministic() {
    let args = [
        "figure",
        "fixed-tbw-vs-N",
        "--tbw",
        "3",
        "--n-list",
        "32,64",
        "--max-index",
        "20",
    ];
    let a = prolate(&args);
    let b = prolate(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_report_matches_schema() {
    let out = prolate(&["verify", "--which", "chi"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let schema: serde_json::Value =
        serde_json::from_str(include_str!("../schemas/verify-report.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator
        .iter_errors(&report)
        .map(|e| e.to_string())
        .collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}");
}

#[test]
fn figure_json_matches_schema() {
    let out = prolate(&[
        "figure",
        "tensor-multiplicity",
        "--n",
        "16",
        "--m",
        "5",
        "--k",
        "2",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let series: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let schema: serde_json::Value =
        serde_json::from_str(include_str!("../schemas/figure-series.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator
        .iter_errors(&series)
        .map(|e| e.to_string())
        .collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}");
}

#[test]
fn spectrum_json_matches_schema() {
    let out = prolate(&[
        "spectrum", "--n", "16", "--m", "6", "--k", "2", "--format", "json",
    ]);
    assert!(out.status.success());
    let series: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let schema: serde_json::Value =
        serde_json::from_str(include_str!("../schemas/figure-series.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    assert!(validator.is_valid(&series));
}

#[test]
fn eig_vs_mw_curves_monotone_per_index() {
    // Widening the band never lowers an eigenvalue (the band projections are
    // ordered), so each fixed-k curve is non-decreasing in 2MW.
    let out = prolate(&[
        "figure",
        "eig-vs-mw",
        "--n",
        "100",
        "--m",
        "80",
        "--k-max",
        "10",
        "--band-max",
        "20",
        "--band-step",
        "1",
    ]);
    assert!(out.status.success());
    let body = stdout(&out);
    let mut lines = body.lines();
    assert_eq!(lines.next().unwrap(), "two_mw,k,eigenvalue");
    let mut last: std::collections::BTreeMap<u64, (f64, f64)> = std::collections::BTreeMap::new();
    for line in lines {
        let cells: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        let (two_mw, k, val) = (cells[0], cells[1] as u64, cells[2]);
        if let Some(&(prev_mw, prev_val)) = last.get(&k) {
            assert!(two_mw > prev_mw);
            assert!(
                val >= prev_val - 1e-12,
                "λ({k}) decreased from {prev_val} to {val} as 2MW grew to {two_mw}"
            );
        }
        last.insert(k, (two_mw, val));
    }
    assert_eq!(last.len(), 11);
}

#[test]
fn spectra_vs_n_emits_requested_configurations() {
    let out = prolate(&[
        "figure",
        "spectra-vs-N",
        "--tbw",
        "27",
        "--n",
        "100",
        "--w-list",
        "0.45,0.22",
        "--max-index",
        "50",
    ]);
    assert!(out.status.success());
    let body = stdout(&out);
    // Two configurations; each emits min(M, max_index) rows.
    let mut per_m: std::collections::BTreeMap<u64, usize> = std::collections::BTreeMap::new();
    for line in body.lines().skip(1) {
        let m: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        *per_m.entry(m as u64).or_default() += 1;
    }
    assert_eq!(per_m.len(), 2);
    for (&m, &rows) in &per_m {
        assert_eq!(rows, (m as usize).min(50), "rows for M={m}");
    }
}

#[test]
fn verify_cross_index_passes() {
    let out = prolate(&["verify", "--which", "cross-index", "--n", "64"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], "pass");
}

#[test]
fn verify_nodal_reports_known_mismatch() {
    // The closed-form count only matches the exact zero set when (2K+1)
    // divides N, so the default sweep finds mismatches and exits 1.
    let out = prolate(&["verify", "--which", "nodal", "--n-max", "16"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], "fail");
}

#[test]
fn verify_duality_with_seed() {
    let out = prolate(&[
        "verify", "--which", "duality", "--n", "32", "--m", "12", "--k", "5", "--seed", "7",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], "pass");
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("prolate-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = prolate(&["verify", "--which", "chi", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("verdict: pass"));
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(serde_json::from_str::<serde_json::Value>(&body).is_ok());
    std::fs::remove_file(&path).ok();
}
