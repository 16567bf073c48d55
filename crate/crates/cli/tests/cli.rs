//! End-to-end tests of the ccg binary: formats, exit codes, determinism.

use std::process::{Command, Output};

fn ccg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn incidence_t3_is_the_reference_matrix() {
    let out = ccg(&["incidence", "--p", "3"]);
    assert!(out.status.success());
    let expected = "\
1 1 1 1 0 0 0 0 0 0 0 0 0
1 0 0 0 1 1 1 0 0 0 0 0 0
1 0 0 0 0 0 0 1 1 1 0 0 0
1 0 0 0 0 0 0 0 0 0 1 1 1
0 1 0 0 1 0 0 1 0 0 1 0 0
0 1 0 0 0 1 0 0 1 0 0 1 0
0 1 0 0 0 0 1 0 0 1 0 0 1
0 0 1 0 0 0 1 1 0 0 0 1 0
0 0 1 0 0 1 0 0 0 1 1 0 0
0 0 1 0 1 0 0 0 1 0 0 0 1
0 0 0 1 1 0 0 0 0 1 0 1 0
0 0 0 1 0 0 1 0 1 0 1 0 0
0 0 0 1 0 1 0 1 0 0 0 0 1
";
    assert_eq!(stdout(&out), expected);
}

#[test]
fn incidence_p2_pbm_bytes() {
    let out = ccg(&["incidence", "--p", "2", "--format", "pbm"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("P1\n7 7\n1 1 1 0 0 0 0\n"));
    assert_eq!(text.lines().count(), 9);
}

#[test]
fn build_lambda_json_counts() {
    let out = ccg(&["build", "--p", "3", "--graph", "lambda", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["vertices"], 1471);
    assert_eq!(doc["loops"], 1471);
    assert_eq!(doc["counts"]["B"], 117);
    assert_eq!(doc["counts"]["C"], 234);
}

#[test]
fn build_gamma_stats_and_edgelist() {
    let out = ccg(&["build", "--p", "2", "--graph", "gamma", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["vertices"], 510);
    assert_eq!(doc["components"][0]["size"], 462);

    let out = ccg(&["build", "--p", "2", "--graph", "gamma", "--format", "edgelist"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("vertices 510\n"));
}

#[test]
fn build_delta_dot() {
    let out = ccg(&["build", "--p", "2", "--graph", "delta", "--format", "dot"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("graph delta_p2 {"));
}

#[test]
fn verify_lambda_p2_matches() {
    let out = ccg(&["verify", "--p", "2", "--graph", "lambda"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc[0]["matched"], true);
}

#[test]
fn verify_gamma_p2_exit_zero() {
    let out = ccg(&["verify", "--p", "2", "--graph", "gamma"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn non_prime_p_is_a_usage_error() {
    for args in [
        vec!["build", "--p", "4", "--graph", "lambda"],
        vec!["stats", "--p", "12"],
        vec!["incidence", "--p", "9"],
        vec!["verify", "--p", "15"],
    ] {
        let out = ccg(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn oracle_refusal_is_a_usage_error() {
    let out = ccg(&["verify", "--p", "7", "--graph", "lambda"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let out = ccg(&[
        "stats",
        "--p",
        "2",
        "--output",
        "/nonexistent-dir/out.json",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn stats_totals() {
    let out = ccg(&["stats", "--p", "3"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["total_vertices"], 1471);
    assert_eq!(doc["total_matrices"], 19683);
    assert_eq!(doc["table1"][6]["vertices"], 144);
}

#[test]
fn builds_are_byte_identical() {
    for format in ["edgelist", "dot", "graphml", "json"] {
        let a = ccg(&["build", "--p", "3", "--graph", "lambda", "--format", format]);
        let b = ccg(&["build", "--p", "3", "--graph", "lambda", "--format", format]);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "format {format}");
    }
}

#[test]
fn threads_flag_and_env_are_accepted() {
    let out = ccg(&["verify", "--p", "2", "--graph", "lambda", "--threads", "1"]);
    assert!(out.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_ccg"))
        .args(["verify", "--p", "2", "--graph", "lambda"])
        .env("CCG_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn gamma_graphml_is_rejected() {
    let out = ccg(&["build", "--p", "2", "--graph", "gamma", "--format", "graphml"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_file_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lambda.edgelist");
    let out = ccg(&[
        "build",
        "--p",
        "2",
        "--graph",
        "lambda",
        "--format",
        "edgelist",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("vertices 191\n"));
}
