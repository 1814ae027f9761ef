use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const TOFFOLI_CHAIN: &str = "OPENQASM 2.0;
include \"qelib1.inc\";
qreg q[5];
ccx q[0],q[1],q[3];
ccx q[2],q[3],q[4];
ccx q[0],q[1],q[3];
";

fn qopt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qopt")).args(args).output().expect("qopt runs")
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn stats_reports_counts() {
    let dir = TempDir::new().unwrap();
    let input = file(&dir, "chain.qasm", TOFFOLI_CHAIN);
    let out = qopt(&["stats", s(&input), "--json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["circuits"][0]["counts"]["total"], 45);
    assert_eq!(v["circuits"][0]["counts"]["t_count"], 21);
}

#[test]
fn stats_keeps_input_order() {
    let dir = TempDir::new().unwrap();
    let paths: Vec<PathBuf> = (0..6)
        .map(|i| file(&dir, &format!("c{i}.qasm"), &format!("OPENQASM 2.0;\nqreg q[{}];\nh q[0];\n", i + 1)))
        .collect();
    let mut args = vec!["stats", "--json"];
    args.extend(paths.iter().map(|p| s(p)));
    let v = json(&qopt(&args));
    for (i, c) in v["circuits"].as_array().unwrap().iter().enumerate() {
        assert_eq!(c["qubits"], i + 1);
    }
}

#[test]
fn optimize_writes_validated_output() {
    let dir = TempDir::new().unwrap();
    let input = file(&dir, "chain.qasm", TOFFOLI_CHAIN);
    let output = dir.path().join("out.qasm");
    let report = dir.path().join("report.json");
    let out = qopt(&["optimize", s(&input), "-o", s(&output), "--validate-dim", "10", "--report", s(&report)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["schema"], "1");
    assert_eq!(r["passes"], "0132312432");
    assert_eq!(r["after"]["total"], 40);
    assert_eq!(r["after"]["t_count"], 15);
    assert_eq!(r["validation"]["verdict"], "equal");

    // Counts in the report match the emitted file.
    let v = json(&qopt(&["stats", s(&output), "--json"]));
    assert_eq!(v["circuits"][0]["counts"], r["after"]);

    let check = qopt(&["check-equiv", s(&input), s(&output)]);
    assert!(check.status.success());
}

#[test]
fn optimize_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let input = file(&dir, "chain.qasm", TOFFOLI_CHAIN);
    let (a, b) = (dir.path().join("a.qasm"), dir.path().join("b.qasm"));
    assert!(qopt(&["optimize", s(&input), "-o", s(&a)]).status.success());
    assert!(qopt(&["optimize", s(&input), "-o", s(&b)]).status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn custom_schedules() {
    let dir = TempDir::new().unwrap();
    let input = file(&dir, "hh.qasm", "OPENQASM 2.0;\nqreg q[1];\nh q[0];\nh q[0];\n");
    let output = dir.path().join("out.qasm");
    let v = json(&qopt(&["optimize", s(&input), "-o", s(&output), "--passes", "2"]));
    assert_eq!(v["after"]["total"], 0);
    let v = json(&qopt(&["optimize", s(&input), "-o", s(&output), "--passes", "4"]));
    assert_eq!(v["after"]["total"], 2);
    assert_eq!(qopt(&["optimize", s(&input), "-o", s(&output), "--passes", "5"]).status.code(), Some(1));
}

#[test]
fn check_equiv_verdicts() {
    let dir = TempDir::new().unwrap();
    let a = file(&dir, "a.qasm", "OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[1];\n");
    let b = file(&dir, "b.qasm", "OPENQASM 2.0;\nqreg q[2];\ncx q[1],q[0];\n");
    let same = qopt(&["check-equiv", s(&a), s(&a)]);
    assert_eq!(same.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&same.stdout).trim(), "equal");
    assert_eq!(qopt(&["check-equiv", s(&a), s(&b)]).status.code(), Some(2));
    assert_eq!(qopt(&["check-equiv", s(&a), s(&b), "--mode", "phasepoly"]).status.code(), Some(2));
    let h = file(&dir, "h.qasm", "OPENQASM 2.0;\nqreg q[2];\nh q[0];\n");
    assert_eq!(qopt(&["check-equiv", s(&a), s(&h), "--mode", "phasepoly"]).status.code(), Some(3));
}

#[test]
fn map_then_check_with_layout() {
    let dir = TempDir::new().unwrap();
    let input = file(&dir, "chain.qasm", TOFFOLI_CHAIN);
    let mapped = dir.path().join("mapped.qasm");
    let layout = dir.path().join("layout.json");
    for arch in ["tenerife", "lnn:5", "ring:6", "grid:2x3"] {
        let out = qopt(&["map", s(&input), "--arch", arch, "-o", s(&mapped), "--layout-out", s(&layout)]);
        assert!(out.status.success(), "{arch}: {}", String::from_utf8_lossy(&out.stderr));
        let check = qopt(&["check-equiv", s(&input), s(&mapped), "--perm", s(&layout)]);
        assert!(check.status.success(), "{arch}");
    }
    assert_eq!(qopt(&["map", s(&input), "--arch", "lnn:3", "-o", s(&mapped)]).status.code(), Some(3));
    assert_eq!(qopt(&["map", s(&input), "--arch", "mesh", "-o", s(&mapped)]).status.code(), Some(1));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out.qasm");
    let bad = file(&dir, "bad.qasm", "OPENQASM 2.0;\nqreg q[1];\nh q[0]\n");
    assert_eq!(qopt(&["optimize", s(&bad), "-o", s(&out)]).status.code(), Some(1));
    let meas = file(&dir, "meas.qasm", "OPENQASM 2.0;\nqreg q[1];\ncreg c[1];\nmeasure q[0] -> c[0];\n");
    assert_eq!(qopt(&["optimize", s(&meas), "-o", s(&out)]).status.code(), Some(3));
    let u3 = file(&dir, "u3.qasm", "OPENQASM 2.0;\nqreg q[1];\nu3(0,0,0) q[0];\n");
    assert_eq!(qopt(&["stats", s(&u3)]).status.code(), Some(3));
    let missing = dir.path().join("missing.qasm");
    assert_eq!(qopt(&["stats", s(&missing)]).status.code(), Some(1));
    assert_eq!(qopt(&["frobnicate"]).status.code(), Some(1));
}
