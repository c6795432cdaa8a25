use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parsmash"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn task<'a>(doc: &'a Value, name: &str) -> &'a Value {
    doc["tasks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|t| t["task"] == name)
        .unwrap()
}

#[test]
fn hpar_z2_over_q() {
    let path = data("z2_hpar.json");
    let out = run(&["hpar", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let tasks = doc["tasks"].as_array().unwrap();
    assert_eq!(tasks.len(), 2);
    assert_eq!(tasks[0]["dimensions"]["H"], serde_json::json!([2, 0, 0]));
    assert_eq!(tasks[1]["dimensions"]["H"], serde_json::json!([0, 0, 0]));
}

#[test]
fn hpar_z2_over_f2_flag() {
    let path = data("z2_hpar.json");
    let out = run(&[
        "hpar",
        path.to_str().unwrap(),
        "--field",
        "F2",
        "--module",
        "B",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["field"], "F2");
    assert_eq!(
        doc["tasks"][0]["dimensions"]["H"],
        serde_json::json!([2, 1, 1])
    );
}

#[test]
fn kpar_trivial_group() {
    let path = data("trivial.json");
    let out = run(&["kpar", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let dims = &json(&out)["tasks"][0]["dimensions"];
    assert_eq!(
        (
            dims["B"].as_u64(),
            dims["Kpar"].as_u64(),
            dims["IG"].as_u64()
        ),
        (Some(1), Some(1), Some(0))
    );
}

#[test]
fn validate_rejects_nonunital_domains() {
    let path = data("nonunital.json");
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    let checks = doc["tasks"][0]["checks"].as_array().unwrap();
    let probe = checks
        .iter()
        .find(|c| c["name"] == "probe (uu)u = u(uu)")
        .unwrap();
    assert_eq!(probe["status"], "fail");
    assert_eq!(probe["witness"], "(uu)u = 0, u(uu) = xyδ_g");
    let warned = run(&["validate", path.to_str().unwrap(), "--checks", "warn"]);
    assert_eq!(warned.status.code(), Some(0));
}

#[test]
fn smash_round_trip() {
    let path = data("split_pair.json");
    let out = run(&["smash", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let smash = task(&doc, "smash");
    assert_eq!(smash["dimensions"]["smash_dim"], 3);
    assert_eq!(smash["details"]["algebra"]["dim"], 3);
    assert_eq!(smash["details"]["labels"].as_array().unwrap().len(), 3);
}

#[test]
fn input_errors_name_the_path() {
    let path = data("bad_input.json");
    let out = run(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["path"], "$.tasks[0].max_degree");
    let out = run(&[
        "kpar",
        data("trivial.json").to_str().unwrap(),
        "--budget",
        "nonsense",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["kpar", data("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical() {
    let path = data("split_pair.json");
    let a = run(&["run", path.to_str().unwrap()]);
    let b = run(&["run", path.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    assert_eq!(doc["inputs_digest"].as_str().unwrap().len(), 64);
    assert!(doc["tasks"][0].get("timings_us").is_none());
    let timed = json(&run(&["run", path.to_str().unwrap(), "--timings"]));
    assert!(timed["tasks"][0].get("timings_us").is_some());
}

#[test]
fn tsv_lists_dimensions() {
    let path = data("trivial.json");
    let out = run(&["kpar", path.to_str().unwrap(), "--format", "tsv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "kpar\tdim\tKpar\t1\t"));
}

#[test]
fn spectral_check_on_split_pair() {
    let path = data("split_pair.json");
    let out = run(&["spectral-check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let dims = &doc["tasks"][0]["dimensions"];
    assert_eq!(dims["hochschild_smash"], dims["hpar_f1"]);
}

#[test]
fn budget_breach_is_skipped() {
    let path = data("z2_hpar.json");
    let out = run(&["kpar", path.to_str().unwrap(), "--budget", "group_order=1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["tasks"][0]["checks"][0]["status"], "skipped");
    assert_eq!(doc["budget"]["group_order"], 1);
}
