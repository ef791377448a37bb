use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chordspace"))
        .args(args)
        .env_remove("CHORDSPACE_CACHE_DIR")
        .output()
        .expect("run cli")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn last_dim(csv: &str) -> String {
    csv.lines().last().unwrap().rsplit(',').next().unwrap().to_string()
}

#[test]
fn enumerate_small_orders() {
    assert_eq!(stdout(&["enumerate", "--order", "2"]), "AABB\nABAB\n");
    assert_eq!(stdout(&["enumerate", "--order", "0"]), "()\n");
    assert_eq!(stdout(&["enumerate", "--order", "1", "--framed"]), "AA|0\nAA|1\n");
    assert_eq!(stdout(&["enumerate", "--order", "2", "--arc"]), "AABB\nABAB\nABBA\n");
}

#[test]
fn enumerate_json_lists_pairings() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["enumerate", "--order", "2", "--format", "json"])).unwrap();
    assert_eq!(v[1]["encoding"], "ABAB");
    assert_eq!(v[1]["pairing"], serde_json::json!([2, 3, 0, 1]));
}

#[test]
fn dims_of_order_three() {
    assert_eq!(last_dim(&stdout(&["dims", "--order", "3", "--relations", "4t"])), "3");
    assert_eq!(last_dim(&stdout(&["dims", "--order", "3", "--relations", "4t,1t"])), "1");
    assert_eq!(last_dim(&stdout(&["dims", "--order", "0"])), "1");
    assert_eq!(last_dim(&stdout(&["dims", "--order", "3", "--field", "gf2"])), "3");
}

#[test]
fn dims_cache_gives_same_answer() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["dims", "--order", "0-4", "--framed", "--cache-dir", d, "--format", "json"];
    let cold = stdout(&args);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    assert_eq!(stdout(&args), cold);
}

#[test]
fn check_exit_codes_follow_expectation() {
    assert_eq!(run(&["check", "phi-iso", "--order", "2"]).status.code(), Some(0));
    assert_eq!(run(&["check", "phi-iso", "--order", "2", "--expect", "fail"]).status.code(), Some(1));
    let bare = ["check", "well-defined", "--orders", "2,2", "--relations", "none"];
    assert_eq!(run(&bare).status.code(), Some(1));
    let mut expect_fail = bare.to_vec();
    expect_fail.extend(["--expect", "fail"]);
    assert_eq!(run(&expect_fail).status.code(), Some(0));
    assert_eq!(run(&["check", "lemma4t", "--order", "2", "--model", "trivial"]).status.code(), Some(0));
    assert_eq!(run(&["check", "commutativity", "--orders", "1,1"]).status.code(), Some(0));
}

#[test]
fn render_marks_odd_chords_dashed() {
    let dot = stdout(&["render", "AA|1"]);
    assert!(dot.contains("style=dashed"));
    let tikz = stdout(&["render", "ABAB|01", "--format", "tikz"]);
    assert!(tikz.contains("\\draw[dashed]"));
}

#[test]
fn bad_input_and_capacity_codes() {
    assert_eq!(run(&["render", "ABA"]).status.code(), Some(2));
    assert_eq!(run(&["dims", "--order", "x"]).status.code(), Some(2));
    assert_eq!(run(&["dims", "--relations", "5t"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--order", "9"]).status.code(), Some(3));
    assert_eq!(run(&["--max-order", "2", "dims", "--order", "3"]).status.code(), Some(3));
}

#[test]
fn weight_table_round_trip_through_validate() {
    let space: serde_json::Value =
        serde_json::from_str(&stdout(&["weights", "space", "--order", "2", "--framed", "--relations", "4t,1t"])).unwrap();
    let dir = tempfile::tempdir().unwrap();
    for (i, f) in space["functionals"].as_array().unwrap().iter().enumerate() {
        let path = dir.path().join(format!("w{i}.json"));
        std::fs::write(&path, f.to_string()).unwrap();
        let out = run(&["weights", "validate", "--table", path.to_str().unwrap(), "--one-t"]);
        assert_eq!(out.status.code(), Some(0));
    }
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n":1,"domain":"all","values":{"AA|0":"1"}}"#).unwrap();
    assert_eq!(run(&["weights", "validate", "--table", bad.to_str().unwrap(), "--one-t"]).status.code(), Some(1));
}

#[test]
fn manifest_records_digest_and_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    let out = run(&["--manifest", path.to_str().unwrap(), "relations", "--order", "2", "--framed"]);
    assert_eq!(out.status.code(), Some(0));
    let m: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(m["command"], "relations");
    assert_eq!(m["fingerprints"].as_array().unwrap().len(), 1);
    use sha2::Digest;
    assert_eq!(m["result_digest"], hex::encode(sha2::Sha256::digest(&out.stdout)));
}
