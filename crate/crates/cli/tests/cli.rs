use std::process::{Command, Output};

use serde_json::Value;

fn qkrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkrep"))
        .args(args)
        .env_remove("QKREP_DENSE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn schema() -> jsonschema::Validator {
    let text = include_str!("../schema/output.schema.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).unwrap()
}

fn json_of(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = qkrep(&all);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let v = schema();
    if let Err(e) = v.validate(&doc) {
        panic!("schema violation for {args:?}: {e}");
    }
    doc
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(str::to_owned).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(str::to_owned).collect())
        .collect();
    (header, rows)
}

fn h2(p: f64) -> f64 {
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

#[test]
fn gap_table_columns_match_formulas() {
    let out = qkrep(&["gap-table", "--d", "4:1024:geometric"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&out));
    assert_eq!(header, ["d", "p", "kd_lower", "repeater_upper", "gap_open"]);
    let ds: Vec<u64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert_eq!(ds, [4, 8, 16, 32, 64, 128, 256, 512, 1024]);
    let mut lowers = Vec::new();
    for r in &rows {
        let d: f64 = r[0].parse().unwrap();
        let p = 1.0 / (d.sqrt() + 1.0);
        let lower: f64 = r[2].parse().unwrap();
        let upper: f64 = r[3].parse().unwrap();
        assert!((lower - (1.0 - 2.0 * h2(p))).abs() < 1e-12);
        assert!((upper - (2.0 * p * (2.0 * d).log2() - p * p.log2())).abs() < 1e-12);
        assert_eq!(r[4] == "true", upper < lower);
        lowers.push(lower);
    }
    assert!(lowers.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn gap_table_json_is_schema_valid() {
    let doc = json_of(&["gap-table", "--d", "4,100,10000"]);
    assert_eq!(doc["command"], "gap-table");
    assert_eq!(doc["rows"].as_array().unwrap().len(), 3);
    assert_eq!(doc["rows"][2]["gap_open"], true);
    assert_eq!(doc["reports"].as_array().unwrap().len(), 6);
}

#[test]
fn invalid_grids_are_usage_errors() {
    for g in ["", "8:4", "4:8:cubic", "x", "4:8:geometric:0.5"] {
        let out = qkrep(&["gap-table", "--d", g]);
        assert_eq!(out.status.code(), Some(2), "grid {g:?}");
    }
}

#[test]
fn hiding_table() {
    let out = qkrep(&["hiding", "--m", "2:8"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&out));
    assert!(header.contains(&"ef_upper".to_owned()) && header.contains(&"kd_ps_lower".to_owned()));
    assert_eq!(rows.len(), 7);
    let ef: f64 = rows[0][2].parse().unwrap();
    assert!((ef - 4.2).abs() < 1e-12);
    for r in &rows {
        let m: f64 = r[0].parse().unwrap();
        let ef: f64 = r[2].parse().unwrap();
        let oracle = 1.0 + 2.0 * m * m * (2.0 * m).log2() / (2.0_f64.powf(m) + 1.0);
        assert!((ef - oracle).abs() < 1e-12);
    }
    json_of(&["hiding", "--m", "2:4"]);
}

#[test]
fn hiding_rejects_small_m() {
    assert_eq!(qkrep(&["hiding", "--m", "1:3"]).status.code(), Some(2));
}

#[test]
fn swap_demo_is_deterministic() {
    let args = ["swap-demo", "--d", "2", "--n", "2", "--seed", "7"];
    let a = qkrep(&args);
    let b = qkrep(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let (_, rows) = csv_rows(&stdout(&a));
    assert_eq!(rows.len(), 16);
    let total: f64 = rows.iter().map(|r| r[2].parse::<f64>().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-12);
    let c = qkrep(&["swap-demo", "--d", "2", "--n", "2", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
    json_of(&args);
}

#[test]
fn swap_demo_needs_a_seed() {
    assert_eq!(
        qkrep(&["swap-demo", "--d", "2", "--n", "2"]).status.code(),
        Some(2)
    );
}

#[test]
fn erasure_demo_rate() {
    let out = qkrep(&["erasure-demo", "--shield-d", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&out));
    assert_eq!(
        header,
        [
            "name",
            "inputs",
            "value",
            "direction",
            "applicable",
            "anchor"
        ]
    );
    assert_eq!(rows[0][0], "erasure_dw_rate");
    let v: f64 = rows[0][2].parse().unwrap();
    assert!(v >= 0.5 - 1e-9);
    let doc = json_of(&["erasure-demo", "--shield-d", "2"]);
    assert!(doc["reports"][0]["value"].as_f64().unwrap() >= 0.5 - 1e-9);
}

#[test]
fn verify_suites_pass() {
    for (suite, extra) in [
        ("pbit", vec!["--max-d", "4"]),
        ("ppt-mixture", vec!["--max-d", "16"]),
        ("hiding", vec![]),
        ("swap", vec![]),
        ("erasure", vec!["--shield-d", "2"]),
        ("haar", vec![]),
    ] {
        let mut args = vec!["verify", "--suite", suite];
        args.extend(extra);
        let out = qkrep(&args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "suite {suite}: {}",
            stdout(&out)
        );
        let (header, rows) = csv_rows(&stdout(&out));
        assert_eq!(header.last().unwrap(), "pass");
        assert!(!rows.is_empty() && rows.iter().all(|r| r.last().unwrap() == "true"));
    }
    let doc = json_of(&["verify", "--suite", "erasure"]);
    assert_eq!(doc["passed"], true);
}

#[test]
fn verify_failure_exits_one() {
    // a single-trial Haar average is far from flat
    let out = qkrep(&["verify", "--suite", "haar", "--trials", "1", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let (_, rows) = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].last().unwrap(), "false");
    let doc: Value = serde_json::from_str(&stdout(&qkrep(&[
        "verify", "--suite", "haar", "--trials", "1", "--seed", "1", "--format", "json",
    ])))
    .unwrap();
    assert_eq!(doc["passed"], false);
    assert!(schema().is_valid(&doc));
}

#[test]
fn dense_cap_violation_is_a_usage_error() {
    let out = qkrep(&[
        "verify",
        "--suite",
        "ppt-mixture",
        "--max-d",
        "16",
        "--dense-cap",
        "64",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_bad_arguments() {
    assert_eq!(
        qkrep(&["verify", "--suite", "bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qkrep(&["verify", "--suite", "ppt-mixture", "--max-d", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn dense_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qkrep"))
        .args(["erasure-demo", "--shield-d", "4"])
        .env("QKREP_DENSE_CAP", "32")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("qkrep-out-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = qkrep(&["gap-table", "--d", "4", "--format", "json", "--output", p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(schema().is_valid(&doc));
    std::fs::remove_file(&path).unwrap();
}
