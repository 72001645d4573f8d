use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn mvpascal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvpascal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn std_from_ideal_file_and_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ideal.json");
    fs::write(&path, r#"{"n": 2, "generators": [[3,0],[1,1],[0,2]]}"#).unwrap();
    let o = mvpascal(&["std", "--ideal-file", path.to_str().unwrap(), "--format", "lines"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0,0\n0,1\n1,0\n2,0\n");
    let o = mvpascal(&["std", "--n", "3", "--ideal-file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gens_inverts_std() {
    let o = mvpascal(&["gens", "--set", "[[0,0],[0,1],[1,0],[2,0]]"]);
    assert_eq!(json(&o)["generators"], serde_json::json!([[0, 2], [1, 1], [3, 0]]));
    let o = mvpascal(&["gens", "--n", "2", "--degree", "1"]);
    assert_eq!(json(&o)["generators"], serde_json::json!([[0, 2], [1, 1], [2, 0]]));
}

#[test]
fn matrix_formats_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    let o = mvpascal(&[
        "matrix",
        "--kind",
        "S",
        "--set",
        "[[0,0],[0,1],[1,0],[0,2]]",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(
        fs::read_to_string(&path).unwrap(),
        "\"0,0\",\"0,1\",\"1,0\",\"0,2\"\n1,1,1,1\n1,2,1,3\n1,1,2,1\n1,3,1,6\n"
    );

    let o = mvpascal(&["matrix", "--kind", "U", "--power", "2", "--n", "1", "--degree", "2", "--format", "text"]);
    assert_eq!(stdout(&o), "1  2  4\n0  1  4\n0  0  1\n");

    let dir_set = dir.path().join("set.json");
    fs::write(&dir_set, "[[0],[1],[2],[3]]").unwrap();
    let o = mvpascal(&["matrix", "--kind", "A", "--set-file", dir_set.to_str().unwrap()]);
    assert_eq!(json(&o)["entries"][3][2], "3");
}

#[test]
fn verify_reports() {
    let o = mvpascal(&["verify", "--suite", "exp", "--set", "[[0,0],[0,1],[1,0],[1,1],[2,0]]", "--p", "-2,-1,0,1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["checks"], 6);

    let o = mvpascal(&["verify", "--suite", "powers", "--set", "[[0,0],[1,1]]"]);
    assert_eq!(o.status.code(), Some(4));

    let o = mvpascal(&["verify", "--suite", "decomp", "--set", "[[0,0],[1,0],[0,2]]", "--ell", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(json(&o)["counterexample"]["check"].as_str().unwrap().contains("ell=5"));

    let o = mvpascal(&["verify", "--suite", "riordan", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn seeds_are_reproducible() {
    let args = ["verify", "--suite", "transform", "--random", "8", "--seed", "17"];
    let a = mvpascal(&args);
    let b = mvpascal(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let default = mvpascal(&["verify", "--suite", "lu", "--random", "5"]);
    let zero = mvpascal(&["verify", "--suite", "lu", "--random", "5", "--seed", "0"]);
    assert_eq!(default.stdout, zero.stdout);
}

#[test]
fn stirling_matrix_output() {
    let o = mvpascal(&["stirling", "--set", "[[0,0],[0,1],[1,0],[2,0]]", "--ell", "5"]);
    let v = json(&o);
    assert_eq!(v["cols"], 6);
    assert_eq!(v["entries"][3][4], "12*x0^2*x1^2 + 24*x0*x1^3 + 14*x1^4");
    let o = mvpascal(&["stirling", "--k", "2", "--ell", "4"]);
    // the matrix entry carries the factor k! = 2
    assert_eq!(stdout(&o), "6*x0^2*x1^2 + 12*x0*x1^3 + 7*x1^4\n");
}

#[test]
fn transform_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("seq.json");
    let forward = dir.path().join("fwd.json");
    let seq = r#"{"n": 1, "values": [{"k": [0], "value": "x1^0"}, {"k": [1], "value": "x1"}, {"k": [2], "value": "x1^2"}]}"#;
    fs::write(&input, seq).unwrap();
    let o = mvpascal(&["transform", "--input", input.to_str().unwrap(), "--out", forward.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let fwd: Value = serde_json::from_str(&fs::read_to_string(&forward).unwrap()).unwrap();
    assert_eq!(fwd["values"][2]["value"], "x1^2 + 2*x1 + 1");

    let o = mvpascal(&["transform", "--input", forward.to_str().unwrap(), "--inverse"]);
    let back = json(&o);
    assert_eq!(back["values"][1]["value"], "x1");
    assert_eq!(back["values"][2]["value"], "x1^2");

    let o = mvpascal(&["transform", "--set", "[[0],[1],[2],[3]]", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let gap = dir.path().join("gap.json");
    fs::write(&gap, r#"{"n": 1, "values": [{"k": [0], "value": 1}, {"k": [2], "value": 1}]}"#).unwrap();
    let o = mvpascal(&["transform", "--input", gap.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn riordan_inverse_and_series() {
    let o = mvpascal(&["riordan", "--g", "1/(1-z1)", "--x", "z1/(1-z1)", "--degree", "3", "--inverse"]);
    let v = json(&o);
    assert_eq!(v["entries"][3], serde_json::json!(["-1", "3", "-3", "1"]));

    let o = mvpascal(&["riordan", "--g", "1/(1-2*z1)", "--x", "z1", "--degree", "2", "--series"]);
    let v = json(&o);
    assert_eq!(v["g"]["coeffs"][2], serde_json::json!({"exp": [2], "num": "4", "den": "1"}));

    let o = mvpascal(&["riordan", "--g", "1", "--x", "z1+z2", "--x", "z1+z2", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = mvpascal(&["riordan", "--g", "1 +", "--x", "z1", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 3"));
}
