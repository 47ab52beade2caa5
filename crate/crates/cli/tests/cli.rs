use std::path::Path;
use std::process::{Command, Output};

const ABF: &str = r#"{"mode":"single","aircraft":[
  {"id":1,"class":"A","task":"landing","window_min_s":0,"scheduled_s":0},
  {"id":2,"class":"B","task":"landing","window_min_s":0,"scheduled_s":0},
  {"id":3,"class":"F","task":"landing","window_min_s":0,"scheduled_s":0}]}"#;

fn runway(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_runway")).args(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn solve_writes_schedule() {
    let dir = tempfile::tempdir().unwrap();
    let (inst, out) = (dir.path().join("inst.json"), dir.path().join("sched.json"));
    std::fs::write(&inst, ABF).unwrap();
    let o = runway(&["solve", "--in", path(&inst), "--out", path(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = json(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(s["objective_s"], 210);
    assert_eq!(s["certified"], true);
}

#[test]
fn validate_default_model() {
    let o = runway(&["validate", "--model", "default"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!o.stdout.is_empty());
}

#[test]
fn brute_force_refuses_twelve_aircraft() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.json");
    let g = runway(&["generate", "--count", "12", "--mix", "mixed", "--seed", "4", "--out", path(&inst)]);
    assert!(g.status.success());
    let o = runway(&["oracle", "--in", path(&inst), "--oracle", "brute"]);
    assert_eq!(o.status.code(), Some(5));
    let line = json(String::from_utf8_lossy(&o.stderr).trim());
    assert_eq!(line["error"], "cap");
}

#[test]
fn exit_codes_are_distinct() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"mode":"single","aircraft":[{"id":1,"class":"?","task":"landing","window_min_s":0,"scheduled_s":0}]}"#).unwrap();
    let tight = dir.path().join("tight.json");
    std::fs::write(
        &tight,
        r#"{"mode":"single","aircraft":[
  {"id":1,"class":"A","task":"landing","window_min_s":0,"window_max_s":10,"scheduled_s":0},
  {"id":2,"class":"A","task":"landing","window_min_s":0,"window_max_s":10,"scheduled_s":0}]}"#,
    )
    .unwrap();
    assert_eq!(runway(&["bogus"]).status.code(), Some(2));
    assert_eq!(runway(&["solve", "--in", path(&bad)]).status.code(), Some(3));
    assert_eq!(runway(&["solve", "--in", path(&tight)]).status.code(), Some(4));
    assert_eq!(runway(&["oracle", "--in", path(&tight)]).status.code(), Some(4));
}

#[test]
fn generate_solve_resolve_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.json");
    runway(&["generate", "--count", "14", "--mix", "dual", "--te", "10", "--seed", "2", "--out", path(&inst)]);
    let first = runway(&["solve", "--in", path(&inst), "--workers", "1"]);
    let second = runway(&["solve", "--in", path(&inst), "--workers", "2"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn no_prune_agrees_with_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.json");
    runway(&["generate", "--count", "8", "--mix", "mixed", "--te", "5", "--seed", "11", "--out", path(&inst)]);
    let ours = json(&String::from_utf8_lossy(&runway(&["solve", "--in", path(&inst), "--no-prune"]).stdout));
    let exact = json(&String::from_utf8_lossy(&runway(&["oracle", "--in", path(&inst), "--oracle", "brute"]).stdout));
    assert_eq!(ours["objective_s"], exact["objective_s"]);
}

#[test]
fn bench_and_export() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bench.csv");
    let o = runway(&["bench", "--counts", "6,7", "--mix", "dual", "--te", "5", "--seeds", "2", "--cap", "8", "--out", path(&csv)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(7) == Some("0.00")));

    let inst = dir.path().join("inst.json");
    std::fs::write(&inst, ABF).unwrap();
    assert_eq!(runway(&["export-mip", "--in", path(&inst)]).status.code(), Some(1));
    let lp = runway(&["export-mip", "--in", path(&inst), "--horizon", "7200"]);
    assert!(String::from_utf8_lossy(&lp.stdout).contains("Minimize"));
}

#[test]
fn config_file_is_read() {
    let dir = tempfile::tempdir().unwrap();
    let (inst, cfg) = (dir.path().join("inst.json"), dir.path().join("solver.toml"));
    std::fs::write(&inst, ABF).unwrap();
    std::fs::write(&cfg, "prune = false\nworkers = 1\n").unwrap();
    assert!(runway(&["solve", "--in", path(&inst), "--config", path(&cfg)]).status.success());
    std::fs::write(&cfg, "unknown = 1\n").unwrap();
    assert_eq!(runway(&["solve", "--in", path(&inst), "--config", path(&cfg)]).status.code(), Some(3));
}
