//! End-to-end runs of the `nongauss` binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nongauss")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn metrics_csv_has_config_comment_and_header() {
    let o = run(&["metrics", "--kind", "pa", "--k", "1", "--r-range", "0.1:0.5:0.2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# "));
    assert!(lines[1].starts_with("# config: {"));
    assert!(lines[1].contains("\"command\":\"metrics\""));
    assert_eq!(lines[2], "kind,k,l,r,epr,var_x,var_p,sum_squeeze_opt,phi_opt,entropy_bits");
    assert_eq!(lines.len(), 6);
    // (2k+2)e^{-2r} for one-sided addition.
    let row: Vec<&str> = lines[4].split(',').collect();
    let r: f64 = row[3].parse().unwrap();
    let epr: f64 = row[4].parse().unwrap();
    assert!((epr - 4.0 * (-2.0 * r).exp()).abs() < 1e-12);
}

#[test]
fn json_output_mirrors_rows() {
    let o = run(&["fidelity", "--r", "0", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert!((rows[0]["fidelity"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn squeezed_input_flags() {
    let o = run(&["fidelity", "--kind", "pa", "--k", "2", "--r", "0.5", "--input", "squeezed", "--epsilon", "0.4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let data = text.lines().nth(3).unwrap();
    assert!(data.starts_with("pa,2,0,r,"));
}

#[test]
fn fixed_epr_axis() {
    let o = run(&["fidelity", "--k", "1", "--l", "1", "--x-axis", "epr", "--r", "1.0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let fields: Vec<&str> = text.lines().nth(3).unwrap().split(',').collect();
    let r: f64 = fields[5].parse().unwrap();
    assert!((r - 0.1798).abs() < 1e-3);
}

#[test]
fn table1_and_figure_write_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t1.csv");
    let o = run(&["table1", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 7);

    let fig = dir.path().join("f2.json");
    let o = run(&["figure", "--figure", "2", "--format", "json", "--out", fig.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&fig).unwrap()).unwrap();
    let tmsv_half = v
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["series"] == "tmsv" && (p["x"].as_f64().unwrap() - 0.5).abs() < 1e-12)
        .unwrap();
    assert!((tmsv_half["y"].as_f64().unwrap() - 2.0 * (-1.0f64).exp()).abs() < 1e-12);
}

#[test]
fn state_dump() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("state.csv");
    let o = run(&["metrics", "--k", "1", "--r", "0.5", "--state-out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let norm: f64 = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('m'))
        .map(|l| l.split(',').nth(2).unwrap().parse::<f64>().unwrap().powi(2))
        .sum();
    assert!((norm - 1.0).abs() < 1e-9);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["sweep", "--kind", "ps", "--k", "2", "--l", "1", "--r-range", "0.1:1.5:0.1", "--input", "squeezed", "--epsilon", "0.3"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn unknown_figure_is_an_error() {
    let o = run(&["figure", "--figure", "9z"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn envelope_violation_exits_with_one() {
    let o = run(&["verify", "--k", "40"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("envelope"));
}

#[test]
fn photon_subtraction_without_squeezing_is_rejected() {
    let o = run(&["metrics", "--k", "1", "--r", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_passes_and_impossible_tolerance_fails() {
    let ok = run(&["verify", "--quick"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    let strict = run(&["verify", "--quick", "--tolerance", "1e-15"]);
    assert_eq!(strict.status.code(), Some(2));
    assert!(stdout(&strict).contains(",false"));
}
