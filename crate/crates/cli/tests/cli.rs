use std::path::PathBuf;
use std::process::{Command, Output};

fn symdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symdyn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("symdyn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn classify_two_point() {
    let o = symdyn(&["classify", "--zoo", "two_point", "--depth", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).lines().next(),
        Some("irreducible: yes; mixing: no; W n0: 1")
    );
}

#[test]
fn classify_oracle_is_qualified() {
    let o = symdyn(&["classify", "--zoo", "sigma((),(2))", "--depth", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("irreducible: yes (bounded(6)); mixing: no (bounded(6))"));
}

#[test]
fn periodize_golden() {
    let o = symdyn(&[
        "periodize",
        "--zoo",
        "golden",
        "--word",
        "00",
        "--depth",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).lines().next(),
        Some("p = 10010; verified exact: yes")
    );
}

#[test]
fn periodize_rejects_forbidden_word() {
    let o = symdyn(&["periodize", "--zoo", "golden", "--word", "11"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn certify_reports_failed_condition() {
    let o = symdyn(&["certify-w", "--zoo", "weiss_monotone", "--n0", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("condition (a) at n0 = 2"));
}

#[test]
fn periodize_zd_hard_square() {
    let o = symdyn(&[
        "periodize-zd",
        "--zoo",
        "hard_square",
        "--pattern",
        r#"{"support":[[0,0]],"values":["1"]}"#,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("H = (7,7)"), "{out}");
    assert!(out.lines().last() == Some("verified: yes"));
    let rows: Vec<&str> = out
        .lines()
        .filter(|l| l.len() == 7 && l.chars().all(|c| c == '0' || c == '1'))
        .collect();
    assert_eq!(rows.len(), 7);
}

#[test]
fn periodize_zd_forbidden_pattern_is_a_violation() {
    let o = symdyn(&[
        "periodize-zd",
        "--zoo",
        "hard_square",
        "--pattern",
        r#"{"support":[[0,0],[0,1]],"values":["1","1"]}"#,
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerate_counts() {
    let o = symdyn(&["enumerate", "--zoo", "golden", "--periods", "5"]);
    assert!(stdout(&o).starts_with("lattice (5): 11 points"));
    let o = symdyn(&["enumerate", "--zoo", "hard_square", "--periods", "3,3"]);
    assert!(stdout(&o).starts_with("lattice (3,3): 34 points"));
}

#[test]
fn measure_from_file() {
    let orbits = temp_file(
        "orbits.json",
        r#"{"points":[{"periods":[1],"cells":["0"]},{"periods":[2],"cells":["0","1"]}],"weights":["1/3","2/3"]}"#,
    );
    let o = symdyn(&[
        "measure",
        "--zoo",
        "golden",
        "--orbits",
        orbits.to_str().unwrap(),
        "--pattern",
        r#"{"support":[[0]],"values":["1"]}"#,
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "mu({0:1}) = 1/3");
}

#[test]
fn spec_file_sft() {
    let spec = temp_file(
        "golden.json",
        r#"{"kind":"sft1d","alphabet":["0","1"],"forbidden":["11"]}"#,
    );
    let o = symdyn(&["classify", "--spec", spec.to_str().unwrap()]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(stdout(&o).starts_with("irreducible: yes; mixing: yes; W n0: 1"));
}

#[test]
fn bad_spec_is_input_error() {
    let spec = temp_file(
        "bad.json",
        r#"{"kind":"sft1d","alphabet":["0","1"],"forbidden":["12"]}"#,
    );
    let o = symdyn(&["classify", "--spec", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn ledrappier_is_not_irreducible() {
    let o = symdyn(&[
        "check-irreducible",
        "--zoo",
        "ledrappier",
        "--delta",
        "box1",
        "--radius",
        "2",
        "--maxsize",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("counterexample"));
}

#[test]
fn json_report_written() {
    let dir = std::env::temp_dir().join(format!("symdyn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("report.json");
    let o = symdyn(&[
        "certify-w",
        "--zoo",
        "golden",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["n0"], 1);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "periodize",
        "--zoo",
        "sigma((2,4),(2,4))",
        "--word",
        "0110",
        "--depth",
        "6",
    ];
    assert_eq!(stdout(&symdyn(&args)), stdout(&symdyn(&args)));
}
