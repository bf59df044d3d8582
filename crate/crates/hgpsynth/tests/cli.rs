//! End-to-end checks of the installed binary: real process, real files,
//! real exit codes.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn hgpsynth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hgpsynth"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hgpsynth-e2e-{tag}-{}", std::process::id()));
    fs::create_dir_all(&dir).expect("temp dir");
    dir
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn synth_verify_emit_pipeline() {
    let dir = scratch("pipeline");
    let path = dir.join("cnot.json");
    let out = hgpsynth(&[
        "synth", "--toric", "3", "--gate", "cnot", "--control", "L:3,3", "--target", "R:3,3",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout_of(&out).contains("7 gates"));

    let out = hgpsynth(&[
        "verify", "--toric", "3", "--gate", "cnot", "--control", "L:3,3", "--target", "R:3,3",
        "--circuit", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("verdict: pass"));

    let out = hgpsynth(&["emit", "--circuit", path.to_str().unwrap(), "--format", "qasm"]);
    assert_eq!(out.status.code(), Some(0));
    let qasm = stdout_of(&out);
    assert!(qasm.starts_with("OPENQASM 2.0;"));
    assert_eq!(qasm.matches("\ncx ").count(), 7);

    // emitting json reproduces the file byte for byte
    let out = hgpsynth(&["emit", "--circuit", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(stdout_of(&out), fs::read_to_string(&path).unwrap());
}

#[test]
fn verify_exits_one_on_a_tampered_circuit() {
    let dir = scratch("tamper");
    let path = dir.join("phase.json");
    let out = hgpsynth(&[
        "synth", "--toric", "2", "--gate", "phase", "--target", "L:2,2",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let mut v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    v["gates"]
        .as_array_mut()
        .unwrap()
        .push(serde_json::json!({"kind": "z", "qubits": [0]}));
    fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();

    let out = hgpsynth(&[
        "verify", "--toric", "2", "--gate", "phase", "--target", "L:2,2",
        "--circuit", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("verdict: FAIL"));
}

#[test]
fn toric_demo_is_deterministic() {
    let d1 = scratch("demo1");
    let d2 = scratch("demo2");
    let o1 = hgpsynth(&["toric-demo", "--L", "3", "--out-dir", d1.to_str().unwrap()]);
    let o2 = hgpsynth(&["toric-demo", "--L", "3", "--out-dir", d2.to_str().unwrap()]);
    assert_eq!(o1.status.code(), Some(0));
    assert_eq!(o2.status.code(), Some(0));
    for name in ["phase", "hadamard", "cnot", "cz"] {
        let f1 = fs::read(d1.join(format!("{name}.json"))).unwrap();
        let f2 = fs::read(d2.join(format!("{name}.json"))).unwrap();
        assert_eq!(f1, f2, "{name}.json differs between runs");
    }
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(hgpsynth(&["--no-such-flag"]).status.code(), Some(2));
    assert_eq!(hgpsynth(&["synth", "--toric", "3", "--gate", "phase"]).status.code(), Some(2));
    assert_eq!(
        hgpsynth(&["emit", "--circuit", "/nonexistent.json", "--format", "qasm"]).status.code(),
        Some(2)
    );
    // ragged parity-check file
    let dir = scratch("badfile");
    let a = dir.join("a.txt");
    fs::write(&a, "2 3\n1 1 0\n1 1\n").unwrap();
    let out = hgpsynth(&[
        "code", "build", "-a", a.to_str().unwrap(), "-b", a.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
}

#[test]
fn help_lists_every_subcommand() {
    let out = hgpsynth(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let help = stdout_of(&out);
    for sub in ["code", "logicals", "synth", "verify", "emit", "toric-demo"] {
        assert!(help.contains(sub), "help missing {sub}");
    }
}
