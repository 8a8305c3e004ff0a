use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_coxhecke"));
    c.env("RUST_LOG", "warn");
    c
}

fn write_config(dir: &Path, text: &str) -> PathBuf {
    let p = dir.join("job.json");
    fs::write(&p, text).unwrap();
    p
}

fn run(config: &Path, out: &Path, extra: &[&str]) -> Output {
    bin().arg("--config").arg(config).arg("--out").arg(out).args(extra).output().unwrap()
}

fn read_json(path: PathBuf) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn classify_a2_orbit() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"matrix": [[1,3],[3,1]], "J": [0], "command": "classify", "seeds": [[1]]}"#);
    let out = run(&cfg, dir.path(), &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = read_json(dir.path().join("classify.json"));
    assert_eq!(v["schema"], "coxeter-hecke/v1");
    assert_eq!(v["result"]["reports"][0]["verdict"], "finite");
    assert_eq!(v["result"]["reports"][0]["orbit"], serde_json::json!([[1], [0, 1, 0]]));
    assert!(v["completeness"].is_string() && v["caps"]["node_budget"].is_number());
}

#[test]
fn centralizer_infinite_dihedral() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"matrix": [[1,0],[0,1]], "command": "centralizer"}"#);
    let out = run(&cfg, dir.path(), &["--cap-length", "6", "--threads", "2"]);
    assert!(out.status.success());
    let v = read_json(dir.path().join("centralizer.json"));
    let basis = v["result"]["basis"].as_array().unwrap();
    assert_eq!(basis.len(), 4);
    assert!(basis.iter().all(|z| z["verified"]["coeffs"] == true && z["verified"]["commutation"] == true));
    assert!(v["completeness"].as_str().unwrap().contains("up to length 6"));
}

#[test]
fn shift_graph_dot_has_six_nodes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"matrix": [[1,3],[3,1]], "command": "shift-graph", "generator_names": ["s", "t"]}"#);
    let out = run(&cfg, dir.path(), &["--cap-length", "3", "--format", "dot"]);
    assert!(out.status.success());
    let dot = fs::read_to_string(dir.path().join("shift-graph.dot")).unwrap();
    let nodes = dot.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count();
    assert_eq!(nodes, 6);
    assert!(dot.contains("[label=\"s t s\"]"));
    assert!(dot.lines().next().unwrap().contains("coxeter-hecke/v1"));
    assert!(!dir.path().join("shift-graph.json").exists());
}

#[test]
fn seeds_from_the_command_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"matrix": [[1,3],[3,1]], "J": [0], "command": "orbit"}"#);
    let out = run(&cfg, dir.path(), &["--seed", "1,0", "--format", "both"]);
    assert!(out.status.success());
    let v = read_json(dir.path().join("orbit.json"));
    assert_eq!(v["result"]["seeds"][0]["seed"], serde_json::json!([1, 0]));
    assert!(dir.path().join("orbit.dot").exists());
}

#[test]
fn cache_cold_and_warm_runs_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let cfg = write_config(dir.path(), r#"{"matrix": [[1,3,2],[3,1,3],[2,3,1]], "J": [0, 1], "command": "centralizer"}"#);
    let (cold, warm) = (dir.path().join("cold"), dir.path().join("warm"));
    assert!(run(&cfg, &cold, &["--cache", cache.to_str().unwrap()]).status.success());
    let files: Vec<_> = fs::read_dir(&cache).unwrap().collect();
    assert_eq!(files.len(), 1);
    assert!(run(&cfg, &warm, &["--cache", cache.to_str().unwrap()]).status.success());
    let a = fs::read(cold.join("centralizer.json")).unwrap();
    let b = fs::read(warm.join("centralizer.json")).unwrap();
    assert_eq!(a, b);
    let uncached = dir.path().join("uncached");
    assert!(run(&cfg, &uncached, &[]).status.success());
    assert_eq!(fs::read(uncached.join("centralizer.json")).unwrap(), a);
}

#[test]
fn truncated_cache_is_discarded() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let cfg = write_config(dir.path(), r#"{"matrix": [[1,3],[3,1]], "command": "centralizer", "caps": {"length_cap": 3}}"#);
    let first = dir.path().join("first");
    assert!(run(&cfg, &first, &["--cache", cache.to_str().unwrap()]).status.success());
    let entry = fs::read_dir(&cache).unwrap().next().unwrap().unwrap().path();
    let text = fs::read(&entry).unwrap();
    fs::write(&entry, &text[..text.len() / 3]).unwrap();

    let second = dir.path().join("second");
    let out = run(&cfg, &second, &["--cache", cache.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("discarding cache"));
    assert_eq!(fs::read(first.join("centralizer.json")).unwrap(), fs::read(second.join("centralizer.json")).unwrap());
    // The rewritten cache is whole again.
    let again: Value = serde_json::from_slice(&fs::read(&entry).unwrap()).unwrap();
    assert!(again["entries"].is_array());
}

#[test]
fn verify_failure_exits_with_4() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"matrix": [[1,3],[3,1]], "J": [0], "command": "verify", "element": [{"word": [1], "coeff": [[[[0, 0]], 1]]}]}"#,
    );
    let out = run(&cfg, dir.path(), &[]);
    assert_eq!(out.status.code(), Some(4));
    let err: Value = serde_json::from_str(String::from_utf8_lossy(&out.stderr).lines().last().unwrap()).unwrap();
    assert_eq!(err["error"]["kind"], "verification_failed");
    let v = read_json(dir.path().join("verify.json"));
    assert_eq!(v["result"]["commutation"]["ok"], false);
}

#[test]
fn exit_codes_for_bad_input_and_budget() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"matrix": [[1,3],[2,1]], "command": "centralizer"}"#);
    let out = run(&cfg, dir.path(), &[]);
    assert_eq!(out.status.code(), Some(2));
    let line = out.stderr.split(|&b| b == b'\n').rfind(|l| l.starts_with(b"{")).unwrap();
    let err: Value = serde_json::from_slice(line).unwrap();
    assert_eq!(err["error"]["kind"], "validation");

    let cfg = write_config(dir.path(), r#"{"matrix": [[1,3,0],[3,1,0],[0,0,1]], "command": "shift-graph"}"#);
    let out = run(&cfg, dir.path(), &["--cap-length", "12", "--cap-nodes", "10"]);
    assert_eq!(out.status.code(), Some(3));

    let cfg = write_config(dir.path(), r#"{"matrix": [[1,2],[2,1]], "command": "centralizer"}"#);
    assert_eq!(run(&cfg, dir.path(), &[]).status.code(), Some(2));
}
