use std::process::{Command, Output};

use serde_json::Value;

fn pathring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathring")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = pathring(&full);
    let v = serde_json::from_slice(&out.stdout).expect("valid json");
    (code(&out), v)
}

#[test]
fn homology_n2_has_z4_at_degree_2_level_1() {
    let (status, v) = json(&["homology", "--n", "2", "--coeff", "Z", "--max-degree", "6"]);
    assert_eq!(status, 0);
    let pn = &v["tables"][0]["cells"];
    let cell = pn.as_array().unwrap().iter().find(|c| c["degree"] == 2 && c["level"] == 1).unwrap();
    assert_eq!(cell["group"]["rank"], 0);
    assert_eq!(cell["group"]["torsion"], serde_json::json!([4]));
    assert_eq!(cell["names"], serde_json::json!([]));
}

#[test]
fn homology_f2_cells_carry_dims() {
    let (status, v) = json(&["homology", "--n", "3", "--coeff", "F2", "--max-degree", "10"]);
    assert_eq!(status, 0);
    let total: u64 = v["tables"][0]["cells"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["degree"] == 7)
        .map(|c| c["dim"].as_u64().unwrap())
        .sum();
    assert_eq!(total, 3);
}

#[test]
fn invalid_n_is_a_usage_error() {
    assert_eq!(code(&pathring(&["homology", "--n", "0"])), 2);
    assert_eq!(code(&pathring(&["verify"])), 2);
    assert_eq!(code(&pathring(&["table", "--n", "2", "--format", "xml"])), 2);
}

#[test]
fn verify_odd_passes() {
    assert_eq!(code(&pathring(&["verify", "--n", "3", "--max-degree", "40"])), 0);
    assert_eq!(code(&pathring(&["verify", "--n", "1"])), 0);
}

#[test]
fn verify_even_reports_discrepancy_and_repairs() {
    for format in ["md", "csv"] {
        let out = pathring(&["verify", "--n", "2", "--max-degree", "40", "--format", format]);
        assert_eq!(code(&out), 1);
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.contains("H^2Y -> 0"), "{text}");
    }
    let (status, v) = json(&["verify", "--n", "2", "--max-degree", "40"]);
    assert_eq!(status, 1);
    assert_eq!(v["discrepancy"]["totals"][0]["degree"], 0);
    let survivors = v["repairs"]["survivors"].as_array().unwrap();
    assert!(survivors.iter().any(|s| {
        let rules = s["rules"].as_array().unwrap();
        rules.contains(&"H^2T -> 0".into()) && rules.contains(&"H^2Y -> 0".into())
    }));
}

#[test]
fn geom_index_n2_k2() {
    let (status, v) = json(&["geom", "index", "--n", "2", "--k", "2", "--segments", "12"]);
    assert_eq!(status, 0);
    assert_eq!((v["index"].as_u64(), v["nullity"].as_u64()), (Some(3), Some(3)));
}

#[test]
fn geom_index_needs_enough_segments() {
    assert_eq!(code(&pathring(&["geom", "index", "--n", "1", "--segments", "2", "--k", "1"])), 2);
}

#[test]
fn tolerance_overrides() {
    let bad = Command::new(env!("CARGO_BIN_EXE_pathring"))
        .args(["geom", "index", "--n", "1"])
        .env("PATHRING_ZERO_TOL", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
    // a threshold above every eigenvalue makes all directions null
    let out = Command::new(env!("CARGO_BIN_EXE_pathring"))
        .args(["geom", "index", "--n", "1", "--format", "json"])
        .env("PATHRING_ZERO_TOL", "2")
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["tolerances"]["zero_tol"], 2.0);
    assert_eq!(v["index"], 0);
    // the flag wins over the environment
    let out = Command::new(env!("CARGO_BIN_EXE_pathring"))
        .args(["geom", "index", "--n", "1", "--zero-tol", "1e-3"])
        .env("PATHRING_ZERO_TOL", "2")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn geom_checks_pass_and_are_seeded() {
    let (status, v) = json(&["geom", "concat-check", "--trials", "1000", "--seed", "7"]);
    assert_eq!(status, 0);
    assert!(v["checks"][0]["worst"].as_f64().unwrap() < 1e-9);
    assert_eq!(v["seed"], 7);
    let again = pathring(&["geom", "concat-check", "--trials", "1000", "--seed", "7", "--jobs", "1", "--format", "json"]);
    assert_eq!(serde_json::from_slice::<Value>(&again.stdout).unwrap(), v);
    assert_eq!(code(&pathring(&["geom", "halfcircle-check", "--n", "2"])), 0);
    assert_eq!(code(&pathring(&["geom", "yk-check", "--n", "3", "--k", "2"])), 0);
}

#[test]
fn table_golden() {
    for n in ["1", "2", "3", "4"] {
        assert_eq!(code(&pathring(&["table", "--n", n, "--golden"])), 0, "n={n}");
    }
    assert_eq!(code(&pathring(&["table", "--n", "4", "--levels", "2", "--golden"])), 0);
    assert_eq!(code(&pathring(&["table", "--n", "2", "--levels", "5", "--golden"])), 2);
    assert_eq!(code(&pathring(&["table", "--n", "5", "--golden"])), 2);
}

#[test]
fn table_n1_two_classes_per_cell() {
    let (status, v) = json(&["table", "--n", "1", "--levels", "3"]);
    assert_eq!(status, 0);
    for c in v["cells"].as_array().unwrap().iter().filter(|c| c["level"].as_u64().unwrap() >= 1) {
        assert_eq!(c["dim"], 2);
        assert_eq!(c["names"].as_array().unwrap().len(), 2);
    }
}
