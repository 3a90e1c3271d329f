use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qtk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtk")).args(args).output().expect("qtk runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn rhombus_file() -> PathBuf {
    let p = scratch("rhombus.json");
    let arrows: Vec<Value> = [("Z1", "Z2"), ("Z2", "Z3"), ("Z3", "Z4"), ("Z4", "Z1")]
        .iter()
        .map(|(a, b)| serde_json::json!({"from": a, "to": b, "weight": "1"}))
        .collect();
    let vertices: Vec<Value> = ["Z1", "Z2", "Z3", "Z4"].iter().map(|v| serde_json::json!({"name": v, "frozen": false})).collect();
    fs::write(&p, serde_json::json!({"root_order": 1, "vertices": vertices, "arrows": arrows}).to_string()).unwrap();
    p
}

#[test]
fn verify_all_passes() {
    let o = qtk(&["verify", "all"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    for suite in ["transport", "verify d4", "verify e6", "middle convolution functor", "mutation/seizure match", "basic-rep", "dims"] {
        assert!(out.contains(&format!("[{suite}]")), "{suite} missing from\n{out}");
    }
    assert!(!out.contains("FAIL"));
}

#[test]
fn flipped_sign_fails_with_entry_diff() {
    let mut closed: Value = serde_json::from_str(qtk_core::gdaha::E6_CLOSED).unwrap();
    let e = closed["generators"]["C"][0][1].as_str().unwrap().to_string();
    closed["generators"]["C"][0][1] = Value::String(format!("-({e})"));
    let path = scratch("e6_flipped.json");
    fs::write(&path, closed.to_string()).unwrap();
    let o = qtk(&["verify", "e6", "--input", path.to_str().unwrap()]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(1), "{out}");
    let line = out.lines().find(|l| l.contains("FAIL")).expect("a failing line");
    assert!(line.contains("C from factorization equals closed form") && line.contains("(1,2): got"), "{line}");

    let o = qtk(&["--format", "json", "verify", "e6", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], Value::Bool(false));
}

#[test]
fn quantum_t1_layout() {
    let o = qtk(&["transport", "emit", "--n", "2", "--index", "1", "--quantum"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "(1,1) = -Z101^(1/2)*Z110^(-1/2)\n(1,2) = -q^(1/2)*Z101^(1/2)*Z110^(1/2)\n(2,1) = q^(-1/2)*Z101^(-1/2)*Z110^(-1/2)\n(2,2) = 0\n"
    );
    let classical = stdout(&qtk(&["transport", "emit", "--n", "2", "--index", "1"]));
    assert!(classical.contains("(1,2) = -Z101^(1/2)*Z110^(1/2)"));
}

#[test]
fn json_reports_are_byte_identical() {
    for args in [
        &["--format", "json", "verify", "basic-rep", "--degree", "3", "--trials", "2", "--seed", "5"][..],
        &["--format", "json", "verify", "e6"][..],
        &["--format", "json", "verify", "match"][..],
    ] {
        let a = qtk(args);
        let b = qtk(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let v: Value = serde_json::from_slice(&a.stdout).unwrap();
        assert!(v["config_hash"].as_str().is_some_and(|h| h.len() == 64));
        assert!(v.get("timings_ms").is_none());
    }
    let other = qtk(&["--format", "json", "verify", "basic-rep", "--degree", "3", "--trials", "2", "--seed", "6"]);
    let v: Value = serde_json::from_slice(&other.stdout).unwrap();
    assert_eq!(v["seed"], Value::from(6));
}

#[test]
fn timings_are_opt_in() {
    let o = qtk(&["--format", "json", "--timings", "verify", "dims"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["timings_ms"].is_object());
}

#[test]
fn out_flag_writes_file() {
    let path = scratch("dims.json");
    let o = qtk(&["--format", "json", "--out", path.to_str().unwrap(), "verify", "dims"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["passed"], Value::Bool(true));
}

#[test]
fn quiver_mutation_round_trip() {
    let q = scratch("triangle.json");
    let once = scratch("triangle_mutated.json");
    let twice = scratch("triangle_mutated_twice.json");
    assert_eq!(qtk(&["--format", "json", "--out", q.to_str().unwrap(), "quiver", "show", "--n", "2"]).status.code(), Some(0));
    let m1 = qtk(&["--format", "json", "--out", once.to_str().unwrap(), "quiver", "mutate", "--input", q.to_str().unwrap(), "--vertex", "Z011"]);
    assert_eq!(m1.status.code(), Some(0));
    let m = qtk(&["--format", "json", "--out", twice.to_str().unwrap(), "quiver", "mutate", "--input", once.to_str().unwrap(), "--vertex", "Z011"]);
    assert_eq!(m.status.code(), Some(0));
    let original: Value = serde_json::from_str(&fs::read_to_string(&q).unwrap()).unwrap();
    let mutated: Value = serde_json::from_str(&fs::read_to_string(&once).unwrap()).unwrap();
    let back: Value = serde_json::from_str(&fs::read_to_string(&twice).unwrap()).unwrap();
    assert_eq!(back["quiver"], original);
    assert_ne!(mutated["quiver"], original);
    assert_eq!(mutated["images"]["Z011"], Value::String("Z011^(-1)".into()));
}

#[test]
fn quiver_seizure() {
    let rh = rhombus_file();
    let o = qtk(&["quiver", "seize", "--input", rh.to_str().unwrap(), "--cycle", "Z1,Z2,Z3,Z4", "--erase", "Z2", "--monomial", "Z2*Z4", "--value", "q"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("3 vertices") && out.contains("Z2 -> q*Z4^(-1)"), "{out}");

    let bad = qtk(&["quiver", "seize", "--input", rh.to_str().unwrap(), "--cycle", "Z1,Z2,Z3,Z4", "--erase", "Z1", "--monomial", "Z2*Z4"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("neither Z2 nor Z4"));
}

#[test]
fn errors_exit_with_two() {
    assert_eq!(qtk(&["verify", "e6", "--input", "/nonexistent/closed.json"]).status.code(), Some(2));
    assert_eq!(qtk(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(qtk(&["verify", "basic-rep", "--degree", "2"]).status.code(), Some(1));
}

#[test]
fn emit_generators() {
    let o = qtk(&["emit", "generators", "--type", "d4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for g in ["O", "B", "G", "P"] {
        assert!(out.lines().any(|l| l.trim_start().starts_with(g)), "{g} missing:\n{out}");
    }
}
