use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn rtz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rtz"))
        .args(args)
        .env_remove("RTZ_PRECISION_DIGITS")
        .output()
        .expect("spawn rtz")
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = rtz(&a);
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn schema() -> jsonschema::JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas/report.v1.json");
    let text = std::fs::read_to_string(path).unwrap();
    let value: Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&value).expect("schema compiles")
}

fn assert_valid(doc: &Value) {
    let s = schema();
    let msgs: Vec<String> = match s.validate(doc) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    assert!(msgs.is_empty(), "schema violations: {msgs:#?}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(rtz(&["verify", "--k", "0", "--n", "2"]).status.code(), Some(2));
    assert_eq!(rtz(&["verify", "--k", "2", "--n", "1"]).status.code(), Some(2));
    assert_eq!(rtz(&["verify", "--k", "5..3"]).status.code(), Some(2));
    assert_eq!(rtz(&["conjecture", "--ell", "17"]).status.code(), Some(2));
    assert_eq!(rtz(&["verify", "--k", "201"]).status.code(), Some(2));
    assert_eq!(rtz(&["bogus"]).status.code(), Some(2));
}

#[test]
fn verify_small_range() {
    let out = rtz(&["verify", "--k", "1..10", "--n", "2..5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let reports = doc["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 40);
    for r in reports {
        let k = r["family"]["k"].as_u64().unwrap();
        let status = r["verdict"]["status"].as_str().unwrap();
        assert_eq!(status, if k == 1 { "vacuously_true" } else { "theorem_holds" });
        assert_eq!(r["circle_count"].as_u64().unwrap(), 2 * k - 2);
    }
    assert_valid(&doc);
}

#[test]
fn verify_table_shows_half_imaginary_roots() {
    let out = rtz(&["verify", "--k", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("-1/12*z^4 - 1/48*z^2"), "{text}");
    assert!(text.contains("z ~ 0 + 5e-1 i"), "{text}");
    assert!(text.contains("z ~ 0 - 5e-1 i"), "{text}");
}

#[test]
fn expand_coefficients() {
    let doc = json(&["expand", "--k", "2", "--n", "2"]);
    let c = &doc["reports"][0]["coefficients"];
    assert_eq!(c, &serde_json::json!({"z^4": "-1/12", "z^2": "-1/48"}));
    assert_valid(&doc);
}

#[test]
fn bernoulli_table() {
    let doc = json(&["bernoulli", "--max", "4"]);
    assert_eq!(doc["reports"][0]["values"], serde_json::json!(["1", "-1/2", "1/6", "0", "-1/30"]));
    assert_valid(&doc);
    let text = String::from_utf8(rtz(&["bernoulli", "--max", "4"]).stdout).unwrap();
    assert!(text.contains("-1/30"));
}

#[test]
fn half_sum_identity_at_one() {
    let doc = json(&["identity", "--which", "eq5.15", "--k", "1"]);
    let r = &doc["reports"][0];
    assert_eq!(r["lhs"], "3/8");
    assert_eq!(r["rhs"], "3/8");
    assert_eq!(r["equal"], true);
    let alias = json(&["identity", "--which", "half-sum", "--k", "1"]);
    assert_eq!(alias["reports"], doc["reports"]);
    assert_valid(&doc);
}

#[test]
fn conjecture_quadratic_case() {
    let out = rtz(&["conjecture", "--k", "1", "--ell", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let r = &doc["reports"][0];
    assert_eq!(r["real_count"], 2);
    assert_eq!(r["circle_count"], 0);
    assert_eq!(r["verdict"]["status"], "consistent_with_conjecture");
    // (25 +- sqrt(621)) / 2
    let s = 621f64.sqrt();
    let mut want = [(25.0 - s) / 2.0, (25.0 + s) / 2.0];
    let mut got: Vec<f64> = r["numeric"]["roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["re"].as_str().unwrap().parse().unwrap())
        .collect();
    got.sort_by(f64::total_cmp);
    want.sort_by(f64::total_cmp);
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() < 1e-12, "{g} vs {w}");
    }
    assert_valid(&doc);
}

#[test]
fn conjecture_ell_one_matches_classic_counts() {
    let c = json(&["conjecture", "--k", "1..4", "--ell", "1"]);
    let d = json(&["classic", "--k", "1..4"]);
    // ell = 1 is the classic polynomial in Z = z^2.
    for (a, b) in c["reports"].as_array().unwrap().iter().zip(d["reports"].as_array().unwrap()) {
        assert_eq!(a["census"], b["census"]);
        assert_eq!(2 * a["circle_count"].as_u64().unwrap(), b["circle_count"].as_u64().unwrap());
        assert_eq!(a["off_circle_nonreal_count"], 0);
    }
}

#[test]
fn criteria_failure_exits_1_with_witness() {
    let out = rtz(&["criteria", "--k", "5", "--n", "7"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("k=5 n=7"), "{err}");
    assert!(err.contains("6312751/264600"), "{err}");
    assert_eq!(rtz(&["criteria", "--k", "3", "--n", "2"]).status.code(), Some(0));
}

#[test]
fn precision_exhaustion_exits_3() {
    // 5 terms cannot reach the residual demanded at 30 digits.
    let out = rtz(&["identity", "--which", "ramanujan", "--k", "1", "--alpha-pi", "1", "--terms", "5"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn every_command_validates_against_schema() {
    let cases: &[&[&str]] = &[
        &["verify", "--k", "1..3", "--n", "2..3", "--criteria"],
        &["verify", "--k", "2", "--n", "2", "--no-numeric"],
        &["classic", "--k", "1..4"],
        &["conjecture", "--k", "1..3", "--ell", "1..3"],
        &["criteria", "--k", "1..4", "--n", "2..3"],
        &["criteria", "--k", "3", "--n", "2", "--c", "1/2"],
        &["identity", "--which", "eq1.2", "--k", "1..2", "--alpha-pi", "1,2"],
        &["identity", "--which", "eq5.15", "--k", "1..5"],
        &["identity", "--which", "convolution", "--m", "1..4"],
        &["expand", "--family", "classic", "--k", "3"],
        &["expand", "--family", "lalin-rogers", "--k", "2"],
        &["expand", "--family", "generalized", "--k", "2", "--ell", "3"],
        &["bernoulli", "--max", "12"],
        &["identity", "--which", "ramanujan", "--k", "1", "--alpha-pi", "1", "--terms", "5"],
    ];
    for args in cases {
        let doc = json(args);
        assert_eq!(doc["schema"], "rtz.report.v1");
        assert!(!doc["reports"].as_array().unwrap().is_empty(), "{args:?}");
        assert_valid(&doc);
    }
}

#[test]
fn csv_columns_are_fixed() {
    let out = rtz(&["verify", "--k", "1..2", "--n", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "variant,k,n,ell,verdict,origin_multiplicity,circle_count,h_at_1,schinzel_min,elapsed_ms"
    );
    assert_eq!(lines.next().unwrap(), "ramanujan_type,1,2,,vacuously_true,2,0,1/16,,");
    assert_eq!(lines.next().unwrap(), "ramanujan_type,2,2,,theorem_holds,2,2,-1/96,,");
    assert!(lines.next().is_none());

    let timed = rtz(&["verify", "--k", "2", "--n", "2", "--format", "csv", "--timings"]);
    let text = String::from_utf8(timed.stdout).unwrap();
    let row = text.lines().nth(1).unwrap();
    let last = row.rsplit(',').next().unwrap();
    assert!(last.parse::<u64>().is_ok(), "{row}");
}

#[test]
fn precision_from_environment() {
    let run = |env: Option<&str>, extra: &[&str]| -> Value {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_rtz"));
        cmd.args(["verify", "--k", "2", "--n", "2", "--format", "json"]).args(extra);
        match env {
            Some(v) => cmd.env("RTZ_PRECISION_DIGITS", v),
            None => cmd.env_remove("RTZ_PRECISION_DIGITS"),
        };
        serde_json::from_slice(&cmd.output().unwrap().stdout).unwrap()
    };
    let digits = |v: &Value| v["reports"][0]["numeric_crosscheck"]["precision_digits"].as_u64().unwrap();
    assert_eq!(digits(&run(None, &[])), 30);
    assert_eq!(digits(&run(Some("45"), &[])), 45);
    assert_eq!(digits(&run(Some("45"), &["--precision", "20"])), 20);
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("rtz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let p = path.to_str().unwrap();
    let out = rtz(&["classic", "--k", "1..3", "--format", "json", "--output", p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let file = std::fs::read(&path).unwrap();
    let direct = rtz(&["classic", "--k", "1..3", "--format", "json"]).stdout;
    assert_eq!(file, direct);
    std::fs::remove_dir_all(&dir).ok();
}
