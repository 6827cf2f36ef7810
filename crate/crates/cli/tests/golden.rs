//! Golden-file tests for the `gradedlie` binary.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the expected outputs.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gradedlie"))
        .args(args)
        .current_dir(root())
        .env_remove("WORKBENCH_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

const CASES: &[(&str, &[&str])] = &[
    ("dims_q_s1", &["dims", "--r1", "1", "--r2", "0", "--s", "1", "--n-max", "5"]),
    ("dims_imag_quadratic", &["dims", "--r1", "0", "--r2", "1", "--s", "0", "--n-max", "3"]),
    ("dims_empty", &["dims", "--n-max", "0"]),
    ("motivic_spec_z", &["motivic-lie", "--weight-bound", "-24"]),
    ("motivic_q_s1", &["motivic-lie", "--s", "1", "--weight-bound", "-8"]),
    ("cohomology_free", &["cohomology", "data/free.pres"]),
    ("cohomology_abelian", &["cohomology", "data/abelian.pres"]),
    ("cohomology_heisenberg", &["cohomology", "data/heisenberg.pres", "--max-degree", "3"]),
    ("galois_model_12", &["galois", "--model", "--degree-max", "12"]),
    ("galois_model_8_outer", &["galois", "--model", "--degree-max", "8", "--modulo-inner"]),
    ("galois_file", &["galois", "--elements", "data/models.elements", "--degree-max", "10"]),
    ("polylog_spec_z", &["polylog"]),
    ("polylog_q_s1", &["polylog", "--s", "1", "--weight-bound", "-8"]),
    ("polylog_empty", &["polylog", "--weight-bound", "-4"]),
    ("completion_spec_z", &["completion", "data/spec_z.toml"]),
    ("completion_trivial", &["completion", "data/trivial.toml"]),
    ("completion_obstructed", &["completion", "data/obstructed.toml"]),
    ("ext_spec_z", &["ext", "--n-max", "6"]),
    ("outder_12", &["outder", "--weight-bound", "-12"]),
];

fn check_golden(path: &Path, actual: &str) {
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

#[test]
fn outputs_match_golden_files() {
    let dir = root().join("tests/golden");
    fs::create_dir_all(&dir).unwrap();
    for (name, args) in CASES {
        for (format, ext) in [("text", "txt"), ("json", "json"), ("csv", "csv")] {
            let mut a = args.to_vec();
            a.extend(["--format", format]);
            let first = stdout(&a);
            assert_eq!(first, stdout(&a), "{name} {format} is not deterministic");
            check_golden(&dir.join(format!("{name}.{ext}")), &first);
        }
    }
}

#[test]
fn json_validates_and_csv_matches_tables() {
    let schema: Value = serde_json::from_str(&fs::read_to_string(root().join("schema/report.schema.json")).unwrap()).unwrap();
    let validator = jsonschema::JSONSchema::compile(&schema).expect("valid schema");
    for (name, args) in CASES {
        let mut a = args.to_vec();
        a.extend(["--format", "json"]);
        let json: Value = serde_json::from_str(&stdout(&a)).unwrap();
        if let Err(errors) = validator.validate(&json) {
            let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
            panic!("{name}: schema violations {msgs:?}");
        }
        assert_eq!(json["schema"], 1);

        let mut a = args.to_vec();
        a.extend(["--format", "csv"]);
        let csv = stdout(&a);
        assert!(!csv.contains('\r'));
        let data_rows = csv.lines().count() - 1;
        let expected = match json["command"].as_str().unwrap() {
            "dims" | "ext" | "outder" | "galois" => json["rows"].as_array().unwrap().len(),
            "motivic-lie" => json["dims"].as_array().unwrap().len(),
            "polylog" => json["polylog_side"].as_array().unwrap().len(),
            "cohomology" => json["h"].as_array().unwrap().iter().map(|t| t.as_array().unwrap().len()).sum(),
            "completion" => {
                let mut w: Vec<i64> = json["generators"].as_array().unwrap().iter().map(|g| g["weight"].as_i64().unwrap()).collect();
                w.dedup();
                w.len()
            }
            other => panic!("unexpected command {other}"),
        };
        assert_eq!(data_rows, expected, "{name}: CSV rows vs table entries");
    }
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["dims", "--n-max", "3"]), Some(0));
    assert_eq!(code(&["cohomology", "data/malformed.pres"]), Some(2));
    assert_eq!(code(&["cohomology", "data/missing.pres"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["motivic-lie", "--weight-bound", "-42"]), Some(2));
    assert_eq!(code(&["galois", "--model", "--elements", "data/models.elements"]), Some(2));
    assert_eq!(code(&["galois", "--elements", "data/zero.elements"]), Some(1));
    assert_eq!(code(&["motivic-lie", "--weight-bound", "-7"]), Some(1));
    assert_eq!(code(&["dims", "--r1", "0", "--r2", "0"]), Some(1));
    assert_eq!(code(&["cohomology", "data/free.pres", "--gap", "2"]), Some(1));
}

#[test]
fn parse_errors_carry_location() {
    let out = run(&["cohomology", "data/malformed.pres"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3, column 14"), "{err}");
    assert!(err.contains("`c`"), "{err}");
}

#[test]
fn output_flag_and_thread_cap() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = Command::new(env!("CARGO_BIN_EXE_gradedlie"))
        .args(["dims", "--n-max", "4", "--format", "json", "--output"])
        .arg(&path)
        .env("WORKBENCH_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read_to_string(&path).unwrap(), stdout(&["dims", "--n-max", "4", "--format", "json"]));
    let bad = Command::new(env!("CARGO_BIN_EXE_gradedlie"))
        .args(["dims"])
        .env("WORKBENCH_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn spec_z_table_values() {
    let json: Value = serde_json::from_str(&stdout(&["motivic-lie", "--format", "json"])).unwrap();
    let dim = |w: i64| {
        json["dims"].as_array().unwrap().iter().find(|e| e["weight"] == w).map(|e| e["dim"].as_u64().unwrap())
    };
    assert_eq!((dim(-16), dim(-22), dim(-24)), (Some(1), Some(2), Some(2)));
    let labels: Vec<&str> = json["generators"].as_array().unwrap().iter().map(|g| g["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["sigma3", "sigma5", "sigma7", "sigma9", "sigma11"]);
}
