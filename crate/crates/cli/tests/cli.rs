use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monocover")).args(args).current_dir(fixtures()).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn tree_cover_of_figure() {
    let v = json(&["graph", "tc", "--graph", "figure.cg"]);
    assert_eq!(v["tree_cover_number"], 4);
    assert_eq!(v["cover"]["components"].as_array().unwrap().len(), 4);
}

#[test]
fn classify_h_star() {
    let v = json(&["coverability", "classify3", "--hypergraph", "h_star.hg"]);
    assert!(v.get("IsomorphicHStar").is_some(), "{v}");
}

#[test]
fn four_disjoint_family() {
    let v = json(&[
        "coverability",
        "check-kcovers",
        "--hypergraph",
        "four_disjoint.hg",
        "--covers",
        "four_disjoint_covers.hg",
        "--k",
        "3",
    ]);
    assert_eq!(v["accepted"], true);
    let v = json(&["coverability", "search-kcovers", "--hypergraph", "four_disjoint.hg", "--k", "4"]);
    assert_eq!(v["found"], false);
}

#[test]
fn small_sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{"kind":"adversarial-sweep","seed":5,"n":[128],"trials":2,
            "p_rule":{"exponent":4,"coefficients":[1],"controls":true},
            "gadget":{"builtin":"four-disjoint","k":3},"budget":100000,"output":"rows.csv"}"#,
    )
    .unwrap();
    let out = run(&["lab", "sweep", "--spec", spec.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("rows.csv")).unwrap();
    assert!(text.starts_with('#'));
    let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert!(data[0].starts_with("n,p,seed,trial,is_found"));
    assert_eq!(data.len(), 1 + 3 * 2);
}

#[test]
fn errors_set_exit_codes() {
    let out = run(&["graph", "tc", "--graph", "missing.cg"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"].is_string());

    let out = run(&["lab", "oracle", "--spec", "specs/sweep.json"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["graph", "tc"]);
    assert_eq!(out.status.code(), Some(2));
}
