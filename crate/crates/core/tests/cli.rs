//! End-to-end runs of the `bcl` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bcl::report::{Document, Payload};

fn spec(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("specs").join(name)
}

fn bcl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcl")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn estimates(o: &Output) -> Vec<bcl::constants::ConstantEstimate> {
    match Document::from_json(&stdout(o)).unwrap().payload {
        Payload::Estimates(e) => e,
        other => panic!("unexpected payload {other:?}"),
    }
}

#[test]
fn kottman_of_euclidean_plane_reaches_sqrt2() {
    let s = spec("lp4_2.json");
    let o = bcl(&["compute", "--constant", "kottman", "--space", s.to_str().unwrap(), "--points", "4", "--seed", "7", "--quick"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let e = estimates(&o);
    assert_eq!(e.len(), 1);
    assert!(e[0].value >= 2f64.sqrt() - 1e-6, "{}", e[0].value);
    assert_eq!(e[0].seed, 7);
}

#[test]
fn compute_output_is_byte_identical_on_rerun() {
    let s = spec("polyhedral_hexagon.json");
    let args = ["compute", "--constant", "kottman-symmetric", "--space", s.to_str().unwrap(), "--points", "3", "--quick"];
    let a = bcl(&args);
    let b = bcl(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn gap_of_subspace_with_itself_is_zero() {
    let m = spec("m.json");
    let m = m.to_str().unwrap();
    let o = bcl(&["compute", "--constant", "gap", "--space-m", m, "--space-l", m, "--quick"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(estimates(&o)[0].value.abs() <= 1e-9);
}

#[test]
fn james_of_l1_plane_is_two() {
    let s = spec("lp2_1.json");
    let o = bcl(&["compute", "--constant", "james", "--space", s.to_str().unwrap(), "--quick"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let e = estimates(&o);
    assert_eq!(e.len(), 2);
    assert!((e[0].value - 2.0).abs() <= 2e-3);
    assert!((e[0].value * e[1].value - 2.0).abs() <= 5e-3);
}

#[test]
fn single_estimate_csv_has_one_row() {
    let s = spec("lp3_inf.json");
    let o = bcl(&["compute", "--constant", "kottman", "--space", s.to_str().unwrap(), "--points", "3", "--quick", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "suite,param,lhs,rhs,slack,status");
    assert!(lines[1].starts_with("kottman_N,N=3 seed=42,2,"), "{}", lines[1]);
}

#[test]
fn passing_suite_exits_zero_and_writes_meta() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lp.json");
    let o = bcl(&["verify", "--suite", "lp-values", "--p", "1,2,inf", "--n", "2,3", "--quick", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc = Document::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(doc.passed());
    let meta: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(bcl::report::meta_path(&out)).unwrap()).unwrap();
    assert_eq!(meta["command"], "verify");
    assert!(meta["wall_time_s"].as_f64().unwrap() >= 0.0);
}

#[test]
fn twisted_suite_reports_failed_assertions() {
    let o = bcl(&["verify", "--suite", "twisted", "--n", "2", "--eps", "0.1", "--points", "3", "--quick"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(stderr(&o).contains("FAIL"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bcl(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(bcl(&["compute", "--constant", "kottman"]).status.code(), Some(2));
    assert_eq!(bcl(&["verify", "--suite", "lp-values", "--p", "0.5"]).status.code(), Some(2));
    assert_eq!(bcl(&["--help"]).status.code(), Some(0));
}

#[test]
fn bad_spec_names_the_offending_field() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"kind":"lp","n":3,"p":0.5}"#).unwrap();
    let o = bcl(&["compute", "--constant", "kottman", "--space", bad.to_str().unwrap(), "--points", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`p`") || stderr(&o).contains(" p"), "{}", stderr(&o));

    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, r#"{"parameter":"p","grid":[],"experiment":{"kind":"james","n":2}}"#).unwrap();
    let o = bcl(&["sweep", "--spec", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("grid"), "{}", stderr(&o));
}

#[test]
fn sweep_plot_and_report_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.json");
    let svg = dir.path().join("sweep.svg");
    let s = spec("sweeps/p_james.json");
    let o = bcl(&["sweep", "--spec", s.to_str().unwrap(), "--quick", "--out", out.to_str().unwrap(), "--plot", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let plot = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(plot.matches("<polyline").count(), 1);
    let pts = plot.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
    assert_eq!(pts.split_whitespace().count(), 7);

    let o = bcl(&["report", "--input", out.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 8);
    let o = bcl(&["report", "--input", out.to_str().unwrap()]);
    assert_eq!(stdout(&o), std::fs::read_to_string(&out).unwrap());
}
