use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordjump"))
        .args(args)
        .output()
        .unwrap()
}

fn run_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ordjump"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

const SINGLE_ONE: &str =
    r#"{"lassoZ":{"left":[{"atom":0}],"mid":[{"atom":1}],"right":[{"atom":0}],"origin":0}}"#;
const SINGLE_ONE_MOVED: &str =
    r#"{"lassoZ":{"left":[{"atom":0}],"mid":[{"atom":1}],"right":[{"atom":0}],"origin":4}}"#;
const ALL_ZERO: &str =
    r#"{"lassoZ":{"left":[{"atom":0}],"mid":[],"right":[{"atom":0}],"origin":0}}"#;

#[test]
fn absorption_is_isomorphic() {
    let o = run(&["iso", "1+w(1)", "w(1)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Isomorphic"));
}

#[test]
fn rank_of_separator() {
    let o = run(&["rank", "z(1)+1+z(1)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn verify_dcc_reports_no_failures() {
    let o = run(&["verify", "r_dcc_phi", "--bound", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let rep = json(&o);
    assert_eq!(rep["name"], "r_dcc_phi");
    assert_eq!(rep["failures"].as_array().unwrap().len(), 0);
    assert!(rep["pairs"].as_u64().unwrap() > 0);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["iso", "w(1)", "z(1)"]).status.code(), Some(1));
    assert_eq!(run(&["canon", "w("]).status.code(), Some(3));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(run(&["rank", "0"]).status.code(), Some(3));
    assert_eq!(
        run(&["complete", "check", "w(z(1))"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["complete", "check", "1+z(1)+1+z(1)+1"]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["rel", "canon", "jump(delta2,Z^3)", ALL_ZERO])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        run(&["rel", "eval", "jump(delta2,Z)", SINGLE_ONE, ALL_ZERO])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["verify", "r_dcc_phi", "--bound", "99"]).status.code(),
        Some(3)
    );
}

#[test]
fn points_from_stdin_and_files() {
    let o = run_stdin(
        &["rel", "eval", "jump(delta2,Z)", "-", SINGLE_ONE_MOVED],
        SINGLE_ONE,
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "equivalent");

    let dir = std::env::temp_dir().join(format!("ordjump-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("x.json");
    std::fs::write(&path, SINGLE_ONE).unwrap();
    let o = run(&[
        "rel",
        "eval",
        "jump(delta2,Z)",
        path.to_str().unwrap(),
        SINGLE_ONE_MOVED,
    ]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_output_round_trips() {
    let o = run(&["--format", "json", "order2tree", "w(1)"]);
    assert_eq!(o.status.code(), Some(0));
    let tree = json(&o)["tree"].to_string();
    let back = run_stdin(&["tree2order", "-"], &tree);
    assert_eq!(back.status.code(), Some(0));
    let text = run(&["tree2order", json(&o)["text"].as_str().unwrap()]);
    assert_eq!(stdout(&back), stdout(&text));

    let c = run(&[
        "--format",
        "json",
        "rel",
        "canon",
        "jump(delta2,Z)",
        SINGLE_ONE_MOVED,
    ]);
    let canon = json(&c)["canonical"].to_string();
    let e = run(&["rel", "eval", "jump(delta2,Z)", &canon, SINGLE_ONE]);
    assert_eq!(e.status.code(), Some(0));

    let r = run(&["--format", "json", "reduce", "r_subgroup", SINGLE_ONE]);
    assert_eq!(r.status.code(), Some(0));
    assert!(json(&r).get("lassoZ").is_some());
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--format", "json", "verify", "r_zjump_to_fs"][..],
        &["enumerate", "terms", "--size", "4"],
        &["--format", "json", "enumerate", "points", "jump(e0,Z)"],
        &["selftest", "--criterion", "9"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn derive_and_hull() {
    let o = run(&["derive", "w(w(1))", "--steps", "2"]);
    assert_eq!(
        stdout(&o).lines().collect::<Vec<_>>(),
        ["w(w(1))", "w(1)", "1"]
    );
    let o = run(&["complete", "hull", "w(z(1))"]);
    assert_eq!(stdout(&o).trim(), "w(z(1)+1)");
}
