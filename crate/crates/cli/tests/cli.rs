use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn orderpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orderpoly")).args(args).output().expect("binary runs")
}

fn instance(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn report(out: &Output) -> Value {
    let stdout = String::from_utf8(out.stdout.clone()).unwrap();
    assert_eq!(stdout.lines().count(), 1, "one report line: {stdout}");
    serde_json::from_str(&stdout).unwrap()
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = orderpoly(args);
    (out.status.code().unwrap(), report(&out))
}

const D2: &str = "digraph\nvertex 2\n3 -> 1\n";

#[test]
fn compute_examples() {
    let d2 = instance(D2);
    let (code, r) = run(&["compute", d2.path().to_str().unwrap(), "--what", "psi"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["psi"]["binom"]["coeffs"], serde_json::json!({"0": 1, "2": 2}));

    let k2 = instance("graph 2\n1 2\n");
    let (code, r) = run(&["compute", k2.path().to_str().unwrap(), "--what", "chromatic"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["chromatic"]["monomial"]["coeffs"], serde_json::json!({"1": "-1", "2": "1"}));

    let (code, r) = run(&["compute", d2.path().to_str().unwrap(), "--what", "defect"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["defect"]["d"], serde_json::json!([1]));
}

#[test]
fn verify_examples() {
    let p3 = instance("graph 3\n1 2\n2 3\n");
    let (code, r) = run(&["verify", p3.path().to_str().unwrap(), "--theorem", "identity"]);
    assert_eq!((code, &r["results"]["holds"]), (0, &Value::Bool(true)));

    let wedge = instance("graph 3\n1 3\n");
    let (code, r) = run(&["verify", wedge.path().to_str().unwrap(), "--theorem", "identity"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["holds"], Value::Bool(false));
    assert_eq!(r["results"]["defect"]["d"], serde_json::json!([1]));
    assert_eq!(r["results"]["witnesses"]["triples"], serde_json::json!([[1, 2, 3]]));

    let d2 = instance(D2);
    let (code, r) = run(&["verify", d2.path().to_str().unwrap(), "--theorem", "gamma", "--alpha", "2,1,3"]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "pass");
    for theorem in ["reciprocity", "turning"] {
        assert_eq!(run(&["verify", d2.path().to_str().unwrap(), "--theorem", theorem]).0, 0);
    }
    let k3 = instance("graph 3\n1 2\n1 3\n2 3\n");
    assert_eq!(run(&["verify", k3.path().to_str().unwrap(), "--theorem", "decomposition"]).0, 0);
}

#[test]
fn exit_codes() {
    let bad = instance("digraph\n1 -> 2\n2 -> 1\n");
    let (code, r) = run(&["compute", bad.path().to_str().unwrap(), "--what", "psi"]);
    assert_eq!((code, r["status"].as_str()), (2, Some("error")));
    let garbled = instance("graph 3\n1 two\n");
    assert_eq!(run(&["compute", garbled.path().to_str().unwrap(), "--what", "psi"]).0, 2);

    let d2 = instance(D2);
    assert_eq!(run(&["verify", d2.path().to_str().unwrap(), "--theorem", "gamma", "--alpha", "3,1,2"]).0, 3);
    assert_eq!(run(&["compute", d2.path().to_str().unwrap(), "--what", "chromatic"]).0, 3);
    assert_eq!(run(&["scan", "--class", "graphs", "--order", "7", "--check", "identity-iff"]).0, 3);
    assert_eq!(run(&["scan", "--class", "trees", "--order", "4", "--check", "nonsense"]).0, 3);
}

#[test]
fn env_overrides_limits() {
    let out = Command::new(env!("CARGO_BIN_EXE_orderpoly"))
        .args(["scan", "--class", "graphs", "--order", "4", "--check", "identity-iff"])
        .env("ORDERPOLY_LIMIT_GRAPHS", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn scan_examples() {
    let (code, r) = run(&["scan", "--class", "graphs", "--order", "4", "--check", "identity-iff"]);
    assert_eq!((code, r["results"]["instances"].as_u64(), r["results"]["failures"].as_u64()), (0, Some(64), Some(0)));
    let (code, r) = run(&["scan", "--class", "digraphs", "--order", "3", "--check", "thnew2"]);
    assert_eq!((code, r["results"]["failures"].as_u64()), (0, Some(0)));
    let (code, r) = run(&["scan", "--class", "trees", "--order", "7", "--check", "conjecture"]);
    assert_eq!((code, r["results"]["counts"]["disagreements"].as_u64()), (0, Some(0)));
}

#[test]
fn output_is_independent_of_workers() {
    for args in [
        ["scan", "--class", "digraphs", "--order", "3", "--check", "large-relabel"],
        ["scan", "--class", "graphs", "--order", "5", "--check", "structured"],
        ["scan", "--class", "trees", "--order", "7", "--check", "conjecture"],
    ] {
        let one = orderpoly(&[&args[..], &["--jobs", "1"]].concat());
        let four = orderpoly(&[&args[..], &["--jobs", "4"]].concat());
        assert_eq!(one.status.code(), Some(0));
        assert_eq!(one.stdout, four.stdout, "{args:?}");
    }
}
