use std::path::Path;
use std::process::Command;

use pstforge_cli::{run, EXIT_BAD_INPUT, EXIT_OK, EXIT_VERIFY_FAILED};

fn run_capture(args: &[&str]) -> (u8, String) {
    let mut out = Vec::new();
    let code = run(std::iter::once("pstforge").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_prints_couplings() {
    let (code, out) = run_capture(&["solve", "--spectrum", "3/2,1/2", "--parity", "even"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("J^2 = 3/4, 1, 3/4"), "{out}");
    assert!(out.contains("bit_size_max = "));
}

#[test]
fn solve_writes_a_scheme_file_that_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("seven.json");
    let (code, _) = run_capture(&["solve", "--spectrum", "3,2,1", "--parity", "odd", "--out", path_str(&file)]);
    assert_eq!(code, EXIT_OK);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(json["format_version"], 1);
    assert_eq!(json["parity"], "odd");
    assert_eq!(json["n_sites"], 7);
    assert_eq!(json["couplings_squared"][0], "3/2");

    let (code, out) = run_capture(&["verify", "--in", path_str(&file)]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("result: PASS"));
}

#[test]
fn verify_rejects_hand_edited_couplings() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("four.json");
    run_capture(&["solve", "--spectrum", "3/2,1/2", "--parity", "even", "--out", path_str(&file)]);
    let mut json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    json["couplings_squared"] = serde_json::json!(["1", "1", "1"]);
    std::fs::write(&file, json.to_string()).unwrap();

    let (code, out) = run_capture(&["verify", "--in", path_str(&file)]);
    assert_eq!(code, EXIT_VERIFY_FAILED);
    assert!(out.contains("exact_spectrum_match: false"));
    assert!(out.contains("degree 2: got -3, expected -5/2"), "{out}");
}

#[test]
fn verify_exit_code_tracks_report() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("linear.json");
    run_capture(&["gen", "--family", "linear", "--n", "8", "--solve", "--out", path_str(&file)]);
    let (code, out) = run_capture(&["verify", "--in", path_str(&file), "--tau", "1/2"]);
    assert_eq!(code, EXIT_VERIFY_FAILED);
    assert!(out.contains("pst_valid: false"));
    let (code, _) = run_capture(&["verify", "--in", path_str(&file), "--tau", "3"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn gen_random_solves_and_reports_time() {
    let (code, out) = run_capture(&["gen", "--family", "random", "--n", "50", "--gap-max", "99", "--seed", "7", "--solve"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("wall time = "));
    assert!(out.contains("N = 50 (even)"));
}

#[test]
fn gen_spectrum_only_file_can_be_verified() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ts.json");
    let (code, out) = run_capture(&["gen", "--family", "ts", "--n", "6", "--T", "1", "--S", "2", "--out", path_str(&file)]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("spectrum: 33/2,23/2,13/2"), "{out}");
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(!text.contains("couplings_squared"));
    assert!(text.contains("\"T\": 1"));
    let (code, _) = run_capture(&["verify", "--in", path_str(&file)]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn simulate_writes_probability_table() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("five.json");
    let csv = dir.path().join("five.csv");
    run_capture(&["gen", "--family", "linear", "--n", "5", "--solve", "--out", path_str(&file)]);
    let (code, _) = run_capture(&[
        "simulate", "--in", path_str(&file), "--t-max", "3.141592653589793", "--steps", "10", "--source", "1", "--csv",
        path_str(&csv),
    ]);
    assert_eq!(code, EXIT_OK);
    let mut reader = csv::Reader::from_path(&csv).unwrap();
    assert_eq!(reader.headers().unwrap(), vec!["t", "p1", "p2", "p3", "p4", "p5"]);
    let rows: Vec<Vec<f64>> = reader
        .records()
        .map(|r| r.unwrap().iter().map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 11);
    assert!((rows[0][1] - 1.0).abs() < 1e-12);
    for row in &rows {
        let total: f64 = row[1..].iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }
    assert!((rows[10][5] - 1.0).abs() < 1e-10);
}

#[test]
fn simulate_output_does_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("six.json");
    run_capture(&["gen", "--family", "linear", "--n", "6", "--solve", "--out", path_str(&file)]);
    let bin = env!("CARGO_BIN_EXE_pstforge");
    let mut tables = Vec::new();
    for threads in ["1", "3"] {
        let csv = dir.path().join(format!("six-{threads}.csv"));
        let status = Command::new(bin)
            .env("PSTFORGE_THREADS", threads)
            .args(["simulate", "--in", path_str(&file), "--t-max", "5", "--steps", "40", "--csv", path_str(&csv)])
            .status()
            .unwrap();
        assert!(status.success());
        tables.push(std::fs::read_to_string(&csv).unwrap());
    }
    assert_eq!(tables[0], tables[1]);
}

#[test]
fn catalog_lists_families() {
    let (code, out) = run_capture(&["catalog"]);
    assert_eq!(code, EXIT_OK);
    for name in ["linear", "ts", "random"] {
        assert!(out.contains(name));
    }
}

#[test]
fn malformed_input_exits_with_two() {
    assert_eq!(run_capture(&["solve", "--spectrum", "3/2,x", "--parity", "even"]).0, EXIT_BAD_INPUT);
    assert_eq!(run_capture(&["solve", "--spectrum", "1,1", "--parity", "even"]).0, EXIT_BAD_INPUT);
    assert_eq!(run_capture(&["solve", "--spectrum", "1", "--parity", "sideways"]).0, EXIT_BAD_INPUT);
    assert_eq!(run_capture(&["gen", "--family", "ts", "--n", "5"]).0, EXIT_BAD_INPUT);
    assert_eq!(run_capture(&["gen", "--family", "random", "--n", "6", "--gap-max", "4"]).0, EXIT_BAD_INPUT);
    assert_eq!(run_capture(&["verify", "--in", "/nonexistent/file.json"]).0, EXIT_BAD_INPUT);
    assert_eq!(run_capture(&["bogus"]).0, EXIT_BAD_INPUT);

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("junk.json");
    std::fs::write(&file, "{not json").unwrap();
    assert_eq!(run_capture(&["verify", "--in", path_str(&file)]).0, EXIT_BAD_INPUT);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_pstforge");
    let ok = Command::new(bin).args(["solve", "--spectrum", "2,1", "--parity", "odd"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("J^2 = 1, 3/2, 3/2, 1"));
    let bad = Command::new(bin).args(["solve", "--parity", "odd"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
