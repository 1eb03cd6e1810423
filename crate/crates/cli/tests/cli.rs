use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubiccf")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["family", "--id", "9"]).status.code(), Some(2));
    assert_eq!(run(&["bounds-table", "--pairs", "1-11"]).status.code(), Some(2));
}

#[test]
fn failed_search_exits_1_with_diagnostic() {
    let out = run(&["moebius", "--poly", "1,1,1,-1", "--root-index", "0", "--budget", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "budget");
}

#[test]
fn family_one_terms() {
    let v = json(&["family", "--id", "1", "--terms", "4"]);
    assert_eq!(v["schema"], "cubiccf/v1");
    let beta: Vec<&str> = v["result"]["gcf"]["beta"].as_array().unwrap().iter().map(|b| b.as_str().unwrap()).collect();
    assert_eq!(beta, ["1/1", "8/1", "35/1", "80/1", "143/1"]);
    let a1 = &v["result"]["gcf"]["a"][1];
    assert_eq!(a1, &serde_json::json!(["0/1", "3/1"]));
}

#[test]
fn artifacts_are_deterministic() {
    let args = ["bounds-table", "--pairs", "1:11,2:42"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert!(v["manifest"].get("wall_time_ms").is_none());
    assert_eq!(v["manifest"]["output_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn timing_flag_adds_wall_time() {
    let v = json(&["--timing", "audit2adic", "--k0", "2"]);
    assert!(v["manifest"]["wall_time_ms"].is_u64());
}

#[test]
fn bounds_table_csv() {
    let out = run(&["--emit", "csv", "bounds-table", "--pairs", "1:11"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# {"));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = |name: &str| row[header.iter().position(|h| *h == name).unwrap()];
    assert_eq!(col("a"), "1");
    assert_eq!(col("t"), "11");
    let lo: f64 = col("exponent_lo").parse().unwrap();
    assert!((lo - 1.963).abs() < 0.002);
    let th: f64 = col("threshold_lo").parse().unwrap();
    assert!((th / 27812480.0 - 1.0).abs() < 0.02);
}

#[test]
fn scan_finds_305() {
    let out = run(&["--emit", "csv", "scan", "--hmax", "1", "--depth", "10"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("\"1,1,1,-1\",1,6,305,")));
}

#[test]
fn realcf_cube_root_of_two() {
    let v = json(&["realcf", "--poly", "1,0,0,-2", "--root-index", "0", "--terms", "8"]);
    let q: Vec<String> = v["result"]["quotients"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect();
    assert_eq!(q[..8], ["1", "3", "1", "5", "1", "1", "4", "1"]);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("cubiccf-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("family.json");
    let out = run(&["--out", path.to_str().unwrap(), "family", "--id", "5", "--a", "1", "--terms", "3"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["manifest"]["command"], "family");
    std::fs::remove_dir_all(&dir).unwrap();
}
