use std::path::PathBuf;
use std::process::{Command, Output};

fn extweyl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extweyl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("extweyl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const STANDARD: &str =
    r#"{"tuple":[{"root":[0,1],"k":0},{"root":[1,0],"k":0},{"root":[1,0],"k":1}]}"#;

#[test]
fn classify_prints_json() {
    let out = extweyl(&["classify", "--arms", "2,2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["type"], "wild");
    assert_eq!(v["signature"], serde_json::json!([7, 1, 1]));
    assert_eq!(v["n"], 9);
}

#[test]
fn invalid_arms_exit_two() {
    let out = extweyl(&["classify", "--arms", "0,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert!(out.stdout.is_empty());
}

#[test]
fn connect_from_files() {
    let moved = r#"{"tuple":[{"root":[1,0],"k":0},{"root":[1,1],"k":0},{"root":[1,0],"k":1}]}"#;
    let from = temp_file("moved.json", moved);
    let to = temp_file("standard.json", STANDARD);
    let out = extweyl(&[
        "connect",
        "--arms",
        "1",
        "--from",
        from.to_str().unwrap(),
        "--to",
        to.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "connected");
    assert!(!v["letters"].as_array().unwrap().is_empty());
}

#[test]
fn connect_mismatched_products_exit_two() {
    let other = r#"{"tuple":[{"root":[0,1],"k":0},{"root":[1,0],"k":0},{"root":[1,0],"k":3}]}"#;
    let from = temp_file("other.json", other);
    let to = temp_file("standard2.json", STANDARD);
    let out = extweyl(&[
        "connect",
        "--arms",
        "1",
        "--from",
        from.to_str().unwrap(),
        "--to",
        to.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn connect_malformed_json_exit_two() {
    let bad = temp_file("bad.json", "{\"tuple\": [");
    let to = temp_file("standard3.json", STANDARD);
    let out = extweyl(&[
        "connect",
        "--arms",
        "1",
        "--from",
        bad.to_str().unwrap(),
        "--to",
        to.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn connect_budget_exhausted_exit_four() {
    let far = r#"{"tuple":[{"root":[0,1],"k":0},{"root":[1,0],"k":40},{"root":[1,0],"k":41}]}"#;
    let from = temp_file("far.json", far);
    let to = temp_file("standard4.json", STANDARD);
    let out = extweyl(&[
        "connect",
        "--arms",
        "1",
        "--from",
        from.to_str().unwrap(),
        "--to",
        to.to_str().unwrap(),
        "--budget",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "exhausted");
    assert_eq!(v["nodes"], 3);
}

#[test]
fn interval_path_of_four() {
    let out = extweyl(&["interval", "--arms", "1", "--moves", "0", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches("label=").count(), 4);
    assert_eq!(dot.matches("->").count(), 3);
    assert!(dot.trim_end().ends_with('}'));
}

#[test]
fn tubular_exit_three() {
    let out = extweyl(&["hurwitz-roundtrip", "--arms", "1,1,1,1", "--walks", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn identical_invocations_identical_output() {
    let args = [
        "interval",
        "--arms",
        "1,1",
        "--moves",
        "2",
        "--k-bound",
        "1",
    ];
    let a = extweyl(&args);
    let b = extweyl(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
