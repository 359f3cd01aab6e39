//! End-to-end CLI checks over the bundled documents: golden outputs,
//! deterministic repetition, exit codes, and error reporting.

use std::path::Path;
use std::process::{Command, Output};

fn qdt(args: &[&str]) -> Output {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    Command::new(env!("CARGO_BIN_EXE_qdt"))
        .current_dir(&data)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn mutate_a2_matches_expected_matrix() {
    let out = qdt(&["--input", "a2.json", "mutate", "--k", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["arrows"], serde_json::json!([[0, 0], [1, 0]]));
}

#[test]
fn fpoly_text_golden() {
    let out = qdt(&["--input", "a2.json", "--text", "fpoly", "--k", "1", "--i", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1 + y1");
}

#[test]
fn gvec_cvec_signs_golden() {
    let out = qdt(&["--input", "a2.json", "gvec", "--k", "1", "--i", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["g"], serde_json::json!([-1, 1]));

    let out = qdt(&["--input", "a2.json", "cvec", "--k", "1,2", "--i", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["c"], serde_json::json!([-1, -1]));

    let out = qdt(&["--input", "a2.json", "signs", "--k", "1,1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["eps"], serde_json::json!(["+", "-"]));
}

#[test]
fn qp_mutation_of_the_triangle() {
    let out = qdt(&["--input", "triangle.json", "mutate", "--qp", "--k", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let labels: Vec<&str> = v["quiver"]["labeled"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, vec!["c*", "a*"]);
    assert!(v.get("potential").is_none(), "potential reduces to zero");
}

#[test]
fn verify_trans_exit_code_and_envelope() {
    let out = qdt(&["--input", "a2.json", "verify", "trans", "--k", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], serde_json::json!(true));
}

#[test]
fn verify_cc_against_catalog() {
    for (kseq, i, module) in [("1", "1", "s1"), ("1,2", "2", "p1"), ("2", "2", "s2")] {
        let out = qdt(&[
            "--input", "a2.json", "verify", "cc", "--k", kseq, "--i", i, "--module", module,
        ]);
        assert!(out.status.success(), "kseq={kseq} i={i} module={module}");
    }
    // a wrong module fails with exit code 1
    let out = qdt(&[
        "--input", "a2.json", "verify", "cc", "--k", "1", "--i", "1", "--module", "zero",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn kronecker_dt_series_needs_four_primes() {
    // with the default three primes the interpolation correctly refuses
    let out = qdt(&["--input", "kronecker.json", "hilb", "--i", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // with four primes the projective-line Euler number 2 appears
    let out = qdt(&[
        "--input", "kronecker.json", "--text", "hilb", "--i", "1", "--primes", "2,3,5,7",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1 + y[1,0] + 2*y[1,1] + y[1,2]");
}

#[test]
fn grass_series_golden() {
    let out = qdt(&["--input", "a2.json", "--text", "grass", "--module", "p1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1 + y[-1,0] + y[-1,-1]");
}

#[test]
fn byte_identical_repetition() {
    let args = ["--input", "a2.json", "dtseries"];
    let first = stdout(&qdt(&args));
    for _ in 0..2 {
        assert_eq!(stdout(&qdt(&args)), first);
    }
}

#[test]
fn loop_document_is_rejected() {
    let dir = std::env::temp_dir().join("qdt-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("loop.json");
    std::fs::write(&path, r#"{"quiver": {"n": 1, "arrows": [[1]]}}"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qdt"))
        .args(["--input", path.to_str().unwrap(), "mutate", "--k", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("loop"), "diagnostic names the offense: {err}");
}

#[test]
fn depth_cap_is_enforced() {
    let out = qdt(&[
        "--input", "a2.json", "seed", "--k", "1,2,1,2,1,2,1,2,1,2,1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
