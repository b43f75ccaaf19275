use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn cstar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cstar")).args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn unit(n: usize, i: usize, j: usize) -> Value {
    let mut entries = vec![json!([0.0, 0.0]); n * n];
    entries[i * n + j] = json!([1.0, 0.0]);
    json!({"rows": n, "cols": n, "entries": entries})
}

fn write_fixture(name: &str, v: &Value) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("cli-{name}.json"));
    std::fs::write(&path, serde_json::to_string(v).unwrap()).unwrap();
    path
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn decompose_diagonal_fixture() {
    let f = write_fixture(
        "diagonal",
        &json!({"ambient": 3, "generators": [unit(3, 0, 0), unit(3, 1, 1), unit(3, 2, 2)]}),
    );
    let out = cstar(&["decompose", path_str(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["result"]["block_sizes"], json!([1, 1, 1]));
    assert_eq!(r["result"]["multiplicities"], json!([1, 1, 1]));
}

#[test]
fn ideal_of_e12_in_m2() {
    let f = write_fixture(
        "m2-e12",
        &json!({"ambient": 2, "generators": [unit(2, 0, 1)], "ideal_generators": [unit(2, 0, 1)]}),
    );
    let out = cstar(&["ideal", path_str(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let cert = &stdout_json(&out)["result"]["certificate"];
    assert!((cert["threshold"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    let p: Vec<f64> = cert["p"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|z| z.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()))
        .collect();
    let e11 = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    assert!(p.iter().zip(e11).all(|(a, b)| (a - b).abs() < 1e-10));
}

#[test]
fn random_fixtures_have_requested_shapes() {
    let a = stdout_json(&cstar(&["random", "algebra", "--blocks", "2", "--mult", "2", "--seed", "1"]));
    assert_eq!(a["ambient"], 4);
    assert_eq!(a["ground_truth"]["blocks"], json!([{"size": 2, "multiplicity": 2}]));

    let t = stdout_json(&cstar(&["random", "tro", "--blocks", "2x3", "--seed", "0"]));
    assert_eq!(t["ambient"], json!([2, 3]));
    assert_eq!(t["ground_truth"]["kind"], "tro");

    let d = stdout_json(&cstar(&["random", "algebra", "--blocks", "1,1,1"]));
    assert_eq!(d["ambient"], 3);
    let f = write_fixture("diag-random", &d);
    let r = stdout_json(&cstar(&["decompose", path_str(&f)]));
    assert_eq!(r["result"]["block_sizes"], json!([1, 1, 1]));
}

#[test]
fn tro_classify_roundtrip() {
    let t = stdout_json(&cstar(&["random", "tro", "--blocks", "2x3,1x1", "--seed", "5"]));
    let f = write_fixture("tro", &t);
    let out = cstar(&["tro-classify", path_str(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["result"]["dim"], 7);
}

#[test]
fn exit_codes() {
    assert_eq!(cstar(&["decompose", "/nonexistent/fixture.json"]).status.code(), Some(1));
    assert_eq!(cstar(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(cstar(&["random", "tro", "--blocks", "2y3"]).status.code(), Some(1));
    assert_eq!(cstar(&["--help"]).status.code(), Some(0));

    // A ground truth that disagrees with the generators is a verification failure.
    let mut wrong = stdout_json(&cstar(&["random", "algebra", "--blocks", "2", "--seed", "4"]));
    wrong["ground_truth"]["blocks"] = json!([{"size": 1, "multiplicity": 2}]);
    let f = write_fixture("wrong-truth", &wrong);
    let out = cstar(&["decompose", path_str(&f)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["status"], "verification_failure");
}

#[test]
fn reports_are_deterministic() {
    let fixture = cstar(&["random", "algebra", "--blocks", "2,1", "--seed", "9"]);
    assert_eq!(fixture.stdout, cstar(&["random", "algebra", "--blocks", "2,1", "--seed", "9"]).stdout);
    let f = write_fixture("det", &stdout_json(&fixture));
    let a = cstar(&["decompose", path_str(&f), "--seed", "3"]);
    let b = cstar(&["decompose", path_str(&f), "--seed", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_flag_writes_file() {
    let f = write_fixture("json-flag", &json!({"ambient": 2, "generators": [unit(2, 0, 1)]}));
    let target = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-report.json");
    let out = cstar(&["decompose", path_str(&f), "--json", path_str(&target)]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(r["result"]["block_sizes"], json!([2]));
}
