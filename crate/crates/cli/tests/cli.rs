use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tlcenter")).args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn generic_fusion() {
    let o = run(&["fusion", "--generic", "2", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "T1 + T3 + T5");
}

#[test]
fn truncated_fusion() {
    let o = run(&["--kappa", "4", "fusion", "2", "2"]);
    assert_eq!(stdout(&o).trim(), "T0");
    let o = run(&["--kappa", "4", "fusion", "1", "1"]);
    assert_eq!(stdout(&o).trim(), "T0 + T2");
}

#[test]
fn modular_data_json() {
    let o = run(&["modular-data", "--kappa", "3", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["S"], serde_json::json!([["1", "-1"], ["-1", "-1"]]));
    assert_eq!(v["modular"], true);
    assert_eq!(v["kappa"], 3);
}

#[test]
fn json_round_trips() {
    for args in [
        &["modular-data", "--kappa", "4", "--format", "json"][..],
        &["prime-tower", "3", "--k-max", "3", "--format", "json"][..],
        &["stability", "fusion", "--size", "2", "--kappa-max", "10", "--format", "json"][..],
    ] {
        let o = run(args);
        assert!(o.status.success(), "{args:?}");
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
        assert_eq!(again, stdout(&o), "{args:?}");
    }
}

#[test]
fn vanishing_quantum_integer_is_a_domain_error() {
    let o = run(&["jw", "--n", "3", "--q", "root:6"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("[3]_q = 0"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["jw"]).status.code(), Some(2));
    assert_eq!(run(&["fusion", "1"]).status.code(), Some(2));
    assert_eq!(run(&["modular-data"]).status.code(), Some(2));
    assert_eq!(run(&["center-fusion", "X1", "M1"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn size_guard_exits_4() {
    assert_eq!(run(&["gram", "--n", "20"]).status.code(), Some(4));
    assert_eq!(run(&["jw", "--n", "5", "--max-size", "4"]).status.code(), Some(4));
}

#[test]
fn cache_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let c = cache.to_str().unwrap();
    let fresh = run(&["jw", "--n", "3", "--format", "json"]);
    let first = run(&["jw", "--n", "3", "--format", "json", "--cache-dir", c]);
    let hit = run(&["jw", "--n", "3", "--format", "json", "--cache-dir", c]);
    assert!(fresh.status.success());
    assert_eq!(fresh.stdout, first.stdout);
    assert_eq!(fresh.stdout, hit.stdout);
    assert!(std::fs::read_dir(&cache).unwrap().count() >= 2);
    // a different domain must not hit the same entry
    let other = run(&["jw", "--n", "3", "--format", "json", "--q", "root:10", "--cache-dir", c]);
    assert_ne!(other.stdout, hit.stdout);
}

#[test]
fn out_writes_artifact_and_prints_summary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let o = run(&["prime-tower", "2", "--k-max", "4", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("65537"));
    let body = std::fs::read_to_string(&path).unwrap();
    assert_eq!(body.lines().next(), Some("k,p,d,root,order"));
    assert_eq!(body.lines().count(), 5);
    let leftovers: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(leftovers.len(), 1, "temporary files left behind: {leftovers:?}");
    assert!(Path::new(&path).exists());
}

#[test]
fn deterministic_output() {
    let a = run(&["crystal-search", "--evidence", "2", "--format", "json"]);
    let b = run(&["crystal-search", "--evidence", "2", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn center_commands() {
    let o = run(&["center-fusion", "M(1,0)", "W(0,1)"]);
    assert_eq!(stdout(&o).trim(), "M(1,0) ⊗ W(0,1) = W(1,1)");
    let o = run(&["center-verify", "M1,1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("half-braiding = true"));
}
