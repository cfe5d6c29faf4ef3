use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../inputs/corpus.cdga")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdga-bar"))
        .arg("--input")
        .arg(corpus())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn tor_with_oracle_agrees_on_loop_space() {
    let o = run(&["tor", "--triple", "LoopS3", "--max-degree", "10", "--oracle", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["valid_up_to"], 9);
    let dims: Vec<u64> = v["dims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![1, 0, 1, 0, 1, 0, 1, 0, 1, 0]);
    assert_eq!(v["oracle"]["agrees"], true);
    let first = &v["products"][0];
    assert_eq!(first["product"], "2 u(-2,6)#0");
}

#[test]
fn json_is_stable_across_runs() {
    let args = ["tor", "--triple", "Flag", "--max-degree", "8", "--json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn bar_check_cdga_passes() {
    let o = run(&["bar", "--triple", "LoopHS2", "--max-degree", "6", "--check-cdga"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("hold"));
}

#[test]
fn formality_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("flag.json");
    let o = run(&[
        "formality",
        "--triple",
        "Flag",
        "--max-degree",
        "8",
        "--certificate",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(v["vanishing"]["holds"], true);

    let other = dir.path().join("path.json");
    let o = run(&[
        "formality",
        "--triple",
        "PathC",
        "--max-degree",
        "8",
        "--certificate",
        other.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("c·1 = 0"));
    assert!(!other.exists());
}

#[test]
fn compare_with_ladder() {
    let o = run(&[
        "compare",
        "--triple",
        "LoopMS2",
        "--triple",
        "LoopHS2",
        "--ladder",
        "Collapse",
        "--max-degree",
        "8",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["equal"], true);
    assert_eq!(v["induced_isomorphism"], true);
}

#[test]
fn cohomology_of_minimal_model() {
    let o = run(&["cohomology", "--algebra", "MS2", "--max-degree", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("[e2] * [e2] = 0"), "{text}");
}

#[test]
fn oracle_inapplicable_and_unknown_names() {
    let o = run(&["tor", "--triple", "LoopHS2", "--max-degree", "6", "--oracle"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["tor", "--triple", "Nope"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no triple named `Nope`"));
}

#[test]
fn parse_errors_cite_position() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.cdga");
    std::fs::write(
        &file,
        "algebra Bad {\n  generator e2 deg 2;\n  generator e3 deg 3;\n  d e2 = e3^2;\n}\n",
    )
    .unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_cdga-bar"))
        .args(["--input", file.to_str().unwrap(), "cohomology", "--algebra", "Bad"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4, column 3"));
}
