use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphpair")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|_| panic!("{}", String::from_utf8_lossy(&out.stderr)));
    (v, out.status.code().unwrap())
}

#[test]
fn verify_theta_example() {
    let (v, code) = json(&["verify-theta", "1", "0", "1", "--weights", "1,1,1,1", "--n", "5", "--j", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "graphpair/1");
    assert_eq!(v["value"]["num"].as_i64().unwrap().abs(), 4);
    assert_eq!(v["value"]["den"], 1);
    assert_eq!(v["sign_uniform"], true);
    assert_eq!(v["counts"]["G"], 4);
}

#[test]
fn enum_structures_example() {
    let (v, code) = json(&["enum-structures", "--theta", "1", "0", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["structures"], 4);
    assert_eq!(v["list"].as_array().unwrap().len(), 4);
}

#[test]
fn sweep_epsilon_example() {
    let (v, code) = json(&["sweep-epsilon", "--theta", "2", "0", "1"]);
    assert_eq!(code, 0);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 16);
    for r in rows {
        let has_negative = r["epsilon"].as_array().unwrap().iter().any(|e| e == -1);
        assert_eq!(r["degenerate"], has_negative);
    }
}

#[test]
fn verify_y_counts() {
    let (v, code) = json(&["verify-y", "1", "0", "1", "1", "0", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["resolutions"], 16);
    assert_eq!(v["value"]["num"].as_i64().unwrap().abs(), 16);
    let (v, code) = json(&["verify-y", "1", "0", "0", "1", "0", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"]["num"].as_i64().unwrap().abs(), 24);
    assert_eq!(v["counts"]["G_prime"], 16);
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["verify-theta", "0", "0", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("p >= 1"));
    assert_eq!(run(&["verify-theta", "1", "0", "1", "--weights", "1,1"]).status.code(), Some(2));
    assert_eq!(run(&["verify-theta", "1", "0", "1", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["diagram"]).status.code(), Some(2));
    assert_eq!(run(&["ribbon", "--c1", "--epsilon", "1,1"]).status.code(), Some(2));
    assert_eq!(run(&["verify-y", "1", "1", "0", "0", "0", "0"]).status.code(), Some(2));
}

#[test]
fn failed_assertions_exit_1() {
    let dir = std::env::temp_dir().join(format!("graphpair-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let table = dir.join("table.json");
    // reversal parity equal to generator parity at n = 5, j = 3
    std::fs::write(
        &table,
        r#"{"dashedEdge":"even","solidEdge":"odd","whiteVertex":"odd","extBlackVertex":"odd","intBlackVertex":"odd","dashedReversal":"even","solidReversal":"odd"}"#,
    )
    .unwrap();
    let out = run(&["verify-theta", "1", "0", "1", "--parity-table", table.to_str().unwrap()]);
    let _ = std::fs::remove_dir_all(&dir);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn output_is_deterministic() {
    let args = ["verify-y", "1", "0", "0", "1", "0", "1", "--seed", "11"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let (a, _) = json(&args);
    let (b, _) = json(&["verify-y", "1", "0", "0", "1", "0", "1", "--seed", "12"]);
    assert_ne!(a["weights"], b["weights"]);
    assert_eq!(a["passed"], true);
}

#[test]
fn formats_and_out() {
    let dot = run(&["diagram", "--c1", "--format", "dot"]);
    assert!(String::from_utf8_lossy(&dot.stdout).starts_with("digraph"));
    let tikz = run(&["diagram", "--theta", "1", "0", "1", "--format", "tikz"]);
    assert!(String::from_utf8_lossy(&tikz.stdout).contains("tikzpicture"));
    let dot = run(&["build-theta", "1", "0", "2", "--format", "dot"]);
    assert_eq!(dot.status.code(), Some(0));
    assert_eq!(run(&["build-y", "1", "0", "1", "1", "1", "1", "--format", "tikz"]).status.code(), Some(2));

    let dir = std::env::temp_dir().join(format!("graphpair-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("export.json");
    let out = run(&["export", "--theta", "1", "0", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let _ = std::fs::remove_dir_all(&dir);
    assert_eq!(v["schema"], "graphpair/1");
    assert_eq!(v["resolutions"].as_array().unwrap().len(), 4);
    assert_eq!(v["ribbon"]["crossings"].as_array().unwrap().len(), 3);
}

#[test]
fn pair_and_counting_from_files() {
    let dir = std::env::temp_dir().join(format!("graphpair-files-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (structures, _) = json(&["enum-structures", "--c1"]);
    let graph = &structures["list"][0]["graph"];
    let gpath = dir.join("graph.json");
    std::fs::write(&gpath, graph.to_string()).unwrap();
    let (v, code) = json(&["pair", "--graph", gpath.to_str().unwrap(), "--c1"]);
    assert_eq!(code, 0);
    assert!(!v["matchings"].as_array().unwrap().is_empty());

    let tpath = dir.join("terms.json");
    std::fs::write(&tpath, format!(r#"[{{"graph": {graph}, "weight": "3/2"}}]"#)).unwrap();
    let (v, code) = json(&["counting", "--terms", tpath.to_str().unwrap(), "--c1"]);
    let (flipped, _) = json(&["counting", "--terms", tpath.to_str().unwrap(), "--c1"]);
    let _ = std::fs::remove_dir_all(&dir);
    assert_eq!(code, 0);
    assert_eq!(v["value"]["den"], 2);
    assert_eq!(v, flipped);
}

#[test]
fn ribbon_subcommand() {
    let (v, code) = json(&["ribbon", "--theta", "1", "0", "1", "--epsilon", "1,-1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["degenerate"], true);
    assert_eq!(v["crossings"].as_array().unwrap().len(), 2);
    let (v, _) = json(&["ribbon", "--theta", "1", "0", "1", "--cross-change", "--epsilon", "1,1,1"]);
    assert_eq!(v["trivial"], true);
    let (v, _) = json(&["ribbon", "--y", "1", "0", "1", "1", "1", "1"]);
    assert_eq!(v["degenerate"], Value::Null);
}
