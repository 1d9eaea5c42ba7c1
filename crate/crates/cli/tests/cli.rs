use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn k3lat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3lat")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn all_pass(r: &Value) -> bool {
    r["verdicts"].as_array().unwrap().iter().all(|v| v["pass"] == true)
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn family_build_kummer() {
    let out = k3lat(&["family", "build", "--name", "K"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["schema_version"], "1");
    assert_eq!(r["command"], "family build");
    assert_eq!(r["results"]["report"]["det"], "64");
    assert_eq!(r["results"]["lattice"]["labels"].as_array().unwrap().len(), 16);
    assert!(all_pass(&r));
}

#[test]
fn family_build_case_iv_and_transcendental() {
    let r = report(&k3lat(&["family", "build", "--name", "NSY", "--d", "3", "--case", "iv"]));
    assert!(all_pass(&r));
    let out = k3lat(&["family", "build", "--name", "T", "--family", "y", "--d", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(k3lat(&["family", "build", "--name", "K", "--case", "v"]).status.code(), Some(2));
    assert_eq!(k3lat(&["family", "build", "--name", "Q"]).status.code(), Some(2));
}

#[test]
fn orbit_classify_example() {
    let out = k3lat(&["orbit", "classify", "--p", "2", "--vector", "1,1,1,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["tag"], "v1");
    assert_eq!(r["results"]["params"]["r"], -1);
    assert_eq!(r["results"]["norm"], -2);
    assert_eq!(r["results"]["alias"], "w1");
    assert_eq!(r["results"]["witness"].as_array().unwrap().len(), 5);
}

#[test]
fn orbit_classify_negative_entries() {
    let r = report(&k3lat(&["orbit", "classify", "--p", "5", "--vector", "-3,2,7,-1,4"]));
    assert!(all_pass(&r));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(k3lat(&["orbit", "classify", "--p", "2", "--bogus"]).status.code(), Some(2));
    assert_eq!(k3lat(&["nonsense"]).status.code(), Some(2));
    assert_eq!(k3lat(&["orbit", "classify", "--p", "4", "--vector", "1,0,0,0,0"]).status.code(), Some(2));
    assert_eq!(k3lat(&["orbit", "classify", "--p", "3", "--vector", "1,0,0"]).status.code(), Some(2));
    assert_eq!(k3lat(&["--help"]).status.code(), Some(0));
}

#[test]
fn igusa_and_invariants() {
    let out = k3lat(&["models", "igusa-check"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["results"]["spot_value"], "0");
    let r = report(&k3lat(&["models", "invariants", "--degree", "4"]));
    assert_eq!(r["results"]["dimension"], 5);
    assert!(all_pass(&r));
    let r = report(&k3lat(&["models", "invariants", "--degree", "2", "--group", "even-sign"]));
    assert_eq!(r["results"]["dimension"], 6);
    assert_eq!(k3lat(&["models", "invariants", "--degree", "9"]).status.code(), Some(2));
}

#[test]
fn gradient_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p4.json");
    std::fs::write(&path, r#"{"vars": 4, "terms": [[[1, 1, 1, 1], "1"], [[4, 0, 0, 0], "1/2"]]}"#).unwrap();
    let out = k3lat(&["models", "gradient", "--poly", path_str(&path), "--point", "1,2,3,5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    // x0 x1 x2 x3 + x0^4/2 at (1, 2, 3, 5)
    assert_eq!(r["results"]["value"], "61/2");
    let grad: Vec<&str> = r["results"]["gradient"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(grad, vec!["32", "15", "10", "6"]);
}

#[test]
fn lattice_file_roundtrip_and_divisor_modes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k8.json");
    let out = k3lat(&["family", "build", "--name", "K4d", "--d", "2", "--out", path_str(&path)]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let r = report(&k3lat(&["lattice", "info", "--file", path_str(&path)]));
    assert!(all_pass(&r));
    assert_eq!(r["results"]["invariants"]["det"], "128");

    let half = format!("1{}", ",-1/2".repeat(16));
    let out = k3lat(&["divisor", "check", "--lattice", path_str(&path), "--class", &half, "--expect", "isotropic_nef_candidate"]);
    assert_eq!(out.status.code(), Some(0));
    // H is big and nef but meets the 16 curves trivially: not ample, exit 1
    let h = format!("1{}", ",0".repeat(16));
    let out = k3lat(&["divisor", "check", "--lattice", path_str(&path), "--class", &h]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["results"]["root_type"], "16A1");

    let r = report(&k3lat(&["divisor", "check", "--lattice", path_str(&path), "--mode", "evenset"]));
    assert_eq!(r["results"]["even_sets"]["kernel_dim"], 5);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
}

#[test]
fn enriques_and_quotient() {
    let r = report(&k3lat(&["enriques", "search", "--q", "t=1"]));
    assert!(all_pass(&r));
    assert_eq!(k3lat(&["enriques", "search", "--q", "w=1"]).status.code(), Some(2));
    let out = k3lat(&["quotient", "verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(report(&out)["results"]["identities"].as_array().unwrap().len() >= 5);
}

#[test]
fn reports_are_deterministic() {
    let strip = |o: Output| {
        let mut v = report(&o);
        v["elapsed_ms"] = Value::Null;
        serde_json::to_string(&v).unwrap()
    };
    let a = strip(k3lat(&["quotient", "verify"]));
    let b = strip(k3lat(&["quotient", "verify"]));
    assert_eq!(a, b);
    let a = strip(k3lat(&["suite", "--filter", "kummer"]));
    let b = strip(k3lat(&["suite", "--filter", "kummer", "--sequential"]));
    assert_eq!(a, b);
}

#[test]
fn suite_filter_and_human() {
    let out = k3lat(&["suite", "--filter", "divisor"]);
    assert_eq!(out.status.code(), Some(0));
    let ids: Vec<i64> = report(&out)["results"].as_array().unwrap().iter().map(|r| r["id"].as_i64().unwrap()).collect();
    assert_eq!(ids, vec![9, 10, 11, 12, 13]);
    let out = k3lat(&["suite", "--filter", "13", "--human"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS  [13 shioda-tate]"), "{text}");
    assert_eq!(k3lat(&["suite", "--filter", "nothing"]).status.code(), Some(1));
}
