use std::process::{Command, Output};

fn cubrig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubrig")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_json_is_deterministic() {
    let a = cubrig(&["verify", "counterexample", "--format", "json"]);
    let b = cubrig(&["verify", "counterexample", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"][0]["claims"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_text_lists_claims() {
    let o = cubrig(&["verify", "bruhat"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 4);
    assert!(text.contains(" ms)"));
}

#[test]
fn failures_exit_nonzero() {
    assert_eq!(cubrig(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(cubrig(&["cubeset", "build", "-c", "torus:2"]).status.code(), Some(2));
    assert_eq!(cubrig(&["paths", "list", "-c", "k", "--from", "0", "--to", "1"]).status.code(), Some(2));
    let dir = std::env::temp_dir().join(format!("cubrig-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // a square whose last face points at the wrong edge
    let path = dir.join("broken.json");
    let good = stdout(&cubrig(&["cubeset", "export", "-c", "cube:2"]));
    let mut v: serde_json::Value = serde_json::from_str(&good).unwrap();
    v["cells"][1][0][3]["cell"] = serde_json::json!(0);
    std::fs::write(&path, v.to_string()).unwrap();
    let o = cubrig(&["cubeset", "validate", "-i", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn export_and_reload() {
    let dir = std::env::temp_dir().join(format!("cubrig-cli-x-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("x.json");
    assert!(cubrig(&["cubeset", "export", "-c", "x", "-o", path.to_str().unwrap()]).status.success());
    let o = cubrig(&["paths", "list", "-i", path.to_str().unwrap(), "--from", "00", "--to", "10"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("3 paths"));
}

#[test]
fn dot_outputs() {
    let o = cubrig(&["paths", "dot", "-c", "cube:3", "--from", "alpha", "--to", "omega"]);
    assert!(stdout(&o).starts_with("digraph \"paths\""));
    let o = cubrig(&["poset", "bruhat", "3", "--format", "dot"]);
    assert_eq!(stdout(&o).matches(" -> ").count(), 6);
}

#[test]
fn mapping_space_homology() {
    let o = cubrig(&["rigidify", "hom", "-c", "necklace:2,2", "--homology", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["provenance"], "necklace-formula");
    assert_eq!(v["counts"][0], 4);
    assert_eq!(v["homology"]["degrees"][0]["betti"], 1);
}

#[test]
fn necklace_commands() {
    let o = cubrig(&["necklace", "hom", "2,1,3", "2,1"]);
    assert!(stdout(&o).starts_with("50 maps"));
    let o = cubrig(&["necklace", "subneck", "-c", "cube:3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["flags"].as_array().unwrap().len(), 13);
}

#[test]
fn sset_commands() {
    assert_eq!(stdout(&cubrig(&["sset", "euler", "-b", "delta:3"])).trim(), "1");
    let o = cubrig(&["poset", "nerve", "boundary-partitions:4"]);
    let text = stdout(&o);
    assert!(text.contains("H2 = Z^1"), "{text}");
}
