use std::process::Command;

use corkscrew::io_cli::{run, BUNDLED_TABLE};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("corkscrew").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok_json(args: &[&str]) -> Value {
    let (code, out, err) = cli(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = format!("{}/schema/{name}", env!("CARGO_MANIFEST_DIR"));
    let s: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&s).unwrap()
}

fn assert_valid(schema: &jsonschema::JSONSchema, v: &Value) {
    if let Err(errors) = schema.validate(v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("schema violations: {msgs:?}\n{v:#}");
    }
}

const COMMANDS: &[&[&str]] = &[
    &["validate", "bundled:4_1"],
    &["validate", "bundled:T2_3xT2_3"],
    &["sarkar", "bundled:4_1"],
    &["delta", "bundled:4_1x4_1_tau", "--m", "1"],
    &["delta", "bundled:4_1x4_1_id", "--m", "1"],
    &["s-nontrivial", "bundled:4_1"],
    &["s-nontrivial", "bundled:T2_3"],
    &["conn", "bundled:dot_box3"],
    &["verdict", "gompf", "--knot", "4_1", "-m", "1", "-i", "1", "-j", "5"],
    &["verdict", "gompf", "--file", "bundled:T2_3", "-m", "1", "-i", "1"],
    &["verdict", "split", "--k1", "bundled:4_1", "--k2", "bundled:4_1", "-m", "1"],
    &["verdict", "periodic", "--file", "bundled:4_1", "-m", "-1", "-i", "2"],
    &["census", "--table", "bundled", "--max-crossings", "6"],
];

#[test]
fn documented_examples() {
    let census = ok_json(&["census", "--table", "bundled", "--max-crossings", "8"]);
    let names: Vec<&str> = census["results"]["selected"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(
        names,
        ["4_1", "5_2", "6_3", "7_4", "7_5", "7_7", "8_1", "8_2", "8_6", "8_7", "8_12", "8_13", "8_14", "8_15", "8_17", "8_18", "8_21"]
    );
    let gompf = ok_json(&["verdict", "gompf", "--knot", "4_1", "-m", "1", "-i", "1", "-j", "5"]);
    assert_eq!(gompf["verdicts"][0]["conclusion"], "StrongCork");
    assert_eq!(gompf["verdicts"][0]["rule"], "Theorem 1.2");
    let delta = ok_json(&["delta", "bundled:4_1x4_1_tau", "--m", "1"]);
    assert!(delta["results"]["delta"].as_i64().unwrap() > 0);
    assert_eq!(delta["verdicts"][0]["conclusion"], "StrongCork");
    assert_eq!(delta["verdicts"][0]["rule"], "delta criterion");
}

#[test]
fn reports_validate_against_schema() {
    let report = schema("report.schema.json");
    for args in COMMANDS {
        assert_valid(&report, &ok_json(args));
    }
}

#[test]
fn reruns_are_byte_identical() {
    for args in COMMANDS {
        let first = cli(args);
        assert_eq!(first, cli(args), "{args:?}");
        let mut text = vec!["--format", "text"];
        text.extend_from_slice(args);
        assert_eq!(cli(&text), cli(&text), "{args:?}");
    }
}

#[test]
fn errors_are_structured() {
    let error = schema("error.schema.json");
    let cases: &[(&[&str], &str)] = &[
        (&["validate", "bundled:nope"], "invalid_argument"),
        (&["validate", "/nonexistent/file.json"], "io"),
        (&["delta", "bundled:4_1", "--m", "0"], "invalid_argument"),
        (&["verdict", "gompf", "--knot", "9_42", "-m", "1", "-i", "1"], "invalid_argument"),
        (&["verdict", "periodic", "--file", "bundled:4_1x4_1_id", "-m", "1", "-i", "1"], "invalid_argument"),
        (&["census", "--table", "/nonexistent.csv"], "io"),
    ];
    for (args, kind) in cases {
        let (code, out, err) = cli(args);
        assert_eq!(code, 1, "{args:?}");
        assert!(out.is_empty());
        let v: Value = serde_json::from_str(&err).unwrap();
        assert_valid(&error, &v);
        assert_eq!(v["error"]["kind"], *kind, "{args:?}: {err}");
    }
    let (code, _, err) = cli(&["--format", "text", "validate", "bundled:nope"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: "));
    let (code, _, _) = cli(&["verdict", "gompf", "-m", "1", "-i", "1"]);
    assert_eq!(code, 2, "usage errors exit with 2");
    let (code, _, _) = cli(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn bad_complex_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cfk.json");
    std::fs::write(&path, "{\"name\": \"x\", \"generators\": []}").unwrap();
    let (code, _, err) = cli(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("no_generators"), "{err}");
    std::fs::write(&path, "{\"name\": \"x\",\n \"generators\": [}").unwrap();
    let (code, _, err) = cli(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&err).unwrap();
    assert_eq!(v["error"]["kind"], "parse");
    assert!(v["error"]["message"].as_str().unwrap().contains("line 2"));
}

#[test]
fn census_is_stable_under_row_shuffles() {
    let reference = ok_json(&["census", "--table", "bundled"]);
    let mut lines: Vec<&str> = BUNDLED_TABLE.lines().collect();
    let header = lines.remove(0);
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..5 {
        lines.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let path = dir.path().join(format!("shuffled{seed}.csv"));
        std::fs::write(&path, format!("{header}\n{}\n", lines.join("\n"))).unwrap();
        let path = path.to_str().unwrap();
        let v = ok_json(&["census", "--table", path]);
        assert_eq!(v["results"], reference["results"], "seed {seed}");
    }
}

#[test]
fn census_reorders_columns_and_rejects_bad_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    std::fs::write(
        &path,
        "arf,name,determinant,crossings,signature,alternating\n1,4_1,5,4,0,1\n0,9_99,4,9,0,1\n0,5_2,7,5,-2,1\n",
    )
    .unwrap();
    let v = ok_json(&["census", "--table", path.to_str().unwrap(), "--max-crossings", "9"]);
    assert_eq!(v["results"]["selected"], serde_json::json!(["4_1", "5_2"]));
    let rejected = v["results"]["rejected"].as_array().unwrap();
    assert_eq!(rejected.len(), 1);
    assert_eq!(rejected[0][0], "9_99");
    std::fs::write(&path, "name,crossings\n4_1,4\n").unwrap();
    let (code, _, err) = cli(&["census", "--table", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("missing_column"), "{err}");
}

#[test]
fn binary_exit_codes_and_environment() {
    let bin = env!("CARGO_BIN_EXE_corkscrew");
    let out = Command::new(bin).args(["delta", "bundled:4_1x4_1_tau"]).output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["window_bump"], 0);
    let bumped = Command::new(bin)
        .args(["delta", "bundled:4_1x4_1_tau"])
        .env("CORKSCREW_WINDOW_BUMP", "3")
        .output()
        .unwrap();
    let w: Value = serde_json::from_slice(&bumped.stdout).unwrap();
    assert_eq!(w["window_bump"], 3);
    assert_eq!(w["results"]["window"]["bump"], 3);
    assert_eq!(w["results"]["delta"], v["results"]["delta"]);
    let flag = Command::new(bin)
        .args(["--window-bump", "5", "delta", "bundled:4_1x4_1_tau"])
        .env("CORKSCREW_WINDOW_BUMP", "3")
        .output()
        .unwrap();
    let f: Value = serde_json::from_slice(&flag.stdout).unwrap();
    assert_eq!(f["window_bump"], 5, "flag overrides the environment");
    let bad = Command::new(bin).args(["validate", "bundled:nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(bad.stdout.is_empty());
    let usage = Command::new(bin).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
