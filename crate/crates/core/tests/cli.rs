use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const A1: &str = r#"{"vertices": ["0", "1"], "arrows": [["0", "1"], ["0", "1"]]}"#;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quiver-strata"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path_str(&path)
}

fn path_str(p: &Path) -> String {
    p.to_str().unwrap().to_string()
}

fn dims(v: &Value) -> Vec<i64> {
    v["result"]["leaves"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["dim"].as_i64().unwrap())
        .collect()
}

#[test]
fn roots_from_file() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "a1.json", A1);
    let v = json(&bin(&["roots", "--quiver", &q, "--bound", "2,2"]));
    assert_eq!(v["result"]["roots"].as_array().unwrap().len(), 6);
    assert_eq!(v["result"]["imaginary"], 2);
    assert_eq!(v["result"]["roots"][2]["vector"], serde_json::json!([1, 1]));
    assert_eq!(v["result"]["roots"][2]["class"], "imaginary");

    let v = json(&bin(&["roots", "--quiver", &q, "--bound", "0,0"]));
    assert!(v["result"]["roots"].as_array().unwrap().is_empty());
}

#[test]
fn malformed_quiver_reports_position() {
    let dir = TempDir::new().unwrap();
    let q = write(
        &dir,
        "bad.json",
        "{\"vertices\": [\"0\",\n  \"1\"], \"arrows\": [[\"0\" \"1\"]]}",
    );
    let out = bin(&["roots", "--quiver", &q, "--bound", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
    assert!(err.contains("column"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn missing_file_is_an_input_error() {
    let out = bin(&["roots", "--quiver", "/nonexistent/q.json", "--bound", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn leaves_for_type_b() {
    let v = json(&bin(&[
        "leaves", "--group", "cyclic:2", "--c", "0,1", "--n", "2",
    ]));
    assert_eq!(v["result"]["smooth"], false);
    assert_eq!(dims(&v), vec![4, 2]);

    let v = json(&bin(&[
        "leaves", "--group", "cyclic:2", "--c", "1,1/2", "--n", "2",
    ]));
    assert_eq!(v["result"]["smooth"], true);
    assert_eq!(dims(&v), vec![4]);

    let v = json(&bin(&[
        "leaves", "--group", "cyclic:2", "--c", "1,1", "--n", "3",
    ]));
    assert_eq!(v["result"]["smooth"], false);
    assert_eq!(dims(&v), vec![6, 2]);
}

#[test]
fn leaves_from_explicit_lambda() {
    let dir = TempDir::new().unwrap();
    let q = write(
        &dir,
        "framed.json",
        r#"{"vertices": ["∞","0","1"], "arrows": [["∞","0"],["0","1"],["0","1"]]}"#,
    );
    let v = json(&bin(&[
        "leaves", "--quiver", &q, "--lambda", "0,1,-1", "--alpha", "1,2,2",
    ]));
    assert_eq!(v["result"]["variety_dim"], 4);
    assert_eq!(
        v["result"]["leaves"][1]["rep_type"],
        serde_json::json!([[2, [0, 1, 1]], [1, [1, 0, 0]]])
    );
}

#[test]
fn other_problem_commands() {
    let base = ["--group", "cyclic:2", "--c", "0,1", "--n", "2"];
    let v = json(&bin(&[&["smooth"], &base[..]].concat()));
    assert_eq!(v["result"]["smooth"], false);
    assert_eq!(v["result"]["witness"]["kind"], "repeated-part");

    let v = json(&bin(&[&["decompose"], &base[..]].concat()));
    assert_eq!(v["result"]["alpha_norm"], 2);
    assert_eq!(v["result"]["decompositions"].as_array().unwrap().len(), 1);
    let only = &v["result"]["decompositions"][0];
    assert_eq!(only["parts"], v["result"]["canonical"]["parts"]);
    assert_eq!(only["p_sum"], 2);

    let v = json(&bin(&[&["sigma"], &base[..]].concat()));
    assert_eq!(v["result"]["in_sigma"], false);
    assert!(v["result"]["sigma"]
        .as_array()
        .unwrap()
        .contains(&serde_json::json!([0, 1, 1])));
}

#[test]
fn output_is_byte_identical() {
    let args = [
        "decompose",
        "--group",
        "bindihedral:2",
        "--c",
        "1,1/2,1/3,1/5,2",
        "--n",
        "2",
    ];
    let a = bin(&args);
    let b = bin(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn timing_is_opt_in() {
    let base = ["mckay-info", "--group", "cyclic:3"];
    let v = json(&bin(&base));
    assert!(v.get("timing").is_none());
    let v = json(&bin(&[&base[..], &["--timing"]].concat()));
    assert!(v["timing"]["elapsed_ms"].is_number());
}

#[test]
fn mckay_info_every_group() {
    for g in [
        "cyclic:2",
        "cyclic:7",
        "bindihedral:2",
        "bindihedral:5",
        "bintetra",
        "binocta",
        "binicosa",
    ] {
        let v = json(&bin(&["mckay-info", "--group", g, "--n", "3"]));
        assert_eq!(v["result"]["p_alpha"], 3, "{g}");
    }
    let v = json(&bin(&[
        "mckay-info",
        "--group",
        "cyclic:2",
        "--c",
        "1,1/2",
        "--n",
        "2",
    ]));
    assert_eq!(v["result"]["lambda"], serde_json::json!(["-1/2", "-1/2"]));
    assert_eq!(
        v["result"]["lambda_prime"],
        serde_json::json!(["2", "-1/2", "-1/2"])
    );
}

#[test]
fn input_errors() {
    let out = bin(&[
        "leaves",
        "--group",
        "dodecahedral",
        "--lambda",
        "0",
        "--alpha",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = bin(&[
        "leaves", "--group", "cyclic:2", "--lambda", "0,1", "--alpha", "1,2,2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = bin(&["leaves", "--group", "cyclic:2", "--c", "0,1,2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "a1.json", A1);
    // --c only makes sense for a group
    let out = bin(&["leaves", "--quiver", &q, "--c", "0,1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn not_representable_exit_code() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "a1.json", A1);
    let out = bin(&[
        "leaves", "--quiver", &q, "--lambda", "1,1", "--alpha", "1,1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(1,1)"));
}

const REP: &str = r#"{
    "quiver": {"vertices": ["0", "1"], "arrows": [["0", "1"], ["0", "1"]]},
    "alpha": [1, 1],
    "matrices": {"0": [["1"]], "1": [["3"]], "2": [["2"]], "3": [["0"]]}
}"#;

#[test]
fn check_rep_verdicts() {
    let dir = TempDir::new().unwrap();
    let rep = write(&dir, "rep.json", REP);
    let v = json(&bin(&["check-rep", "--rep", &rep, "--lambda", "-2,2"]));
    assert_eq!(v["result"]["holds"], true);
    assert_eq!(
        v["result"]["moment_map"],
        serde_json::json!([[["-2"]], [["2"]]])
    );

    let v = json(&bin(&["check-rep", "--rep", &rep, "--lambda", "1,1"]));
    assert_eq!(v["result"]["holds"], false);
    assert_eq!(v["result"]["reason"], "lambda-dot-alpha nonzero");

    let zero = write(
        &dir,
        "zero.json",
        r#"{"quiver": {"vertices": ["0","1"], "arrows": [["0","1"],["0","1"]]}, "alpha": [2, 1]}"#,
    );
    let v = json(&bin(&["check-rep", "--rep", &zero, "--lambda", "0,0"]));
    assert_eq!(v["result"]["holds"], true);
}

#[test]
fn check_rep_shape_error_names_arrow() {
    let dir = TempDir::new().unwrap();
    let rep = write(
        &dir,
        "bad.json",
        r#"{"quiver": {"vertices": ["0","1"], "arrows": [["0","1"]]},
            "alpha": [1, 2], "matrices": {"1": [["1"]]}}"#,
    );
    let out = bin(&["check-rep", "--rep", &rep, "--lambda", "0,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("arrow 1"));
}
