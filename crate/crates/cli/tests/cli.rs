//! End-to-end tests of the `petrie` binary: payload shapes, canonical
//! ordering, exit codes, and byte-level determinism.

use std::process::{Command, Output};

use serde_json::Value;

fn petrie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_petrie"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn payload(args: &[&str]) -> Value {
    let out = petrie(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn partitions_in_canonical_order() {
    let v = payload(&["partitions", "--n", "4"]);
    assert_eq!(
        v["result"],
        serde_json::json!(["4", "3,1", "2,2", "2,1,1", "1,1,1,1"])
    );
}

#[test]
fn partitions_of_zero_is_the_empty_string() {
    let v = payload(&["partitions", "--n", "0"]);
    assert_eq!(v["result"], serde_json::json!([""]));
}

#[test]
fn partitions_of_six_has_eleven_entries() {
    let v = payload(&["partitions", "--n", "6"]);
    assert_eq!(v["result"].as_array().unwrap().len(), 11);
}

#[test]
fn expand_monomial_table() {
    let v = payload(&["expand", "--d", "2", "--lambda", "2,2", "--basis", "m"]);
    let expected: Value = serde_json::from_str(
        r#"{"4":"1","3,1":"2","2,2":"3","2,1,1":"4","1,1,1,1":"6"}"#,
    )
    .unwrap();
    assert_eq!(v["result"], expected);
    // canonical key order in the raw bytes
    let raw = String::from_utf8(petrie(&["expand", "--d", "2", "--lambda", "2,2", "--basis", "m"]).stdout).unwrap();
    let i4 = raw.find("\"4\"").unwrap();
    let i31 = raw.find("\"3,1\"").unwrap();
    let i1111 = raw.find("\"1,1,1,1\"").unwrap();
    assert!(i4 < i31 && i31 < i1111);
}

#[test]
fn expand_schur_signs() {
    let v = payload(&["expand", "--d", "2", "--lambda", "3", "--basis", "s"]);
    assert_eq!(v["result"]["2,1"], "1");
    assert_eq!(v["result"]["1,1,1"], "-1");
}

#[test]
fn expand_elementary_product() {
    let v = payload(&["expand", "--d", "1", "--lambda", "2,1", "--basis", "m"]);
    assert_eq!(v["result"]["2,1"], "1");
    assert_eq!(v["result"]["1,1,1"], "3");
}

#[test]
fn expand_with_infinite_truncation() {
    let v = payload(&["expand", "--d", "inf", "--lambda", "2", "--basis", "m"]);
    assert_eq!(v["result"]["2"], "1");
    assert_eq!(v["result"]["1,1"], "1");
}

#[test]
fn matrix_carries_order_header() {
    let v = payload(&["matrix", "--n", "2", "--d", "1", "--target", "p"]);
    assert_eq!(v["result"]["source"], "hd(1)");
    assert_eq!(v["result"]["target"], "p");
    assert_eq!(v["result"]["order"], serde_json::json!(["2", "1,1"]));
    // e₂ = −p₂/2 + p₁₁/2 and e₁e₁ = p₁₁
    assert_eq!(
        v["result"]["entries"],
        serde_json::json!([["-1/2", "1/2"], ["0", "1"]])
    );
}

#[test]
fn matrix_degree_one_schur_target() {
    let v = payload(&["matrix", "--n", "1", "--d", "3", "--target", "s"]);
    assert_eq!(v["result"]["entries"], serde_json::json!([["1"]]));
}

#[test]
fn count_examples() {
    let v = payload(&["count", "--d", "2", "--row", "2,1", "--col", "3"]);
    assert_eq!(v["result"], 1);
    let v = payload(&[
        "count", "--d", "3", "--mode", "congruent", "--row", "1", "--col", "1",
    ]);
    assert_eq!(v["result"], 1);
    let v = payload(&["count", "--d", "2", "--row", "2,2", "--col", "2,2"]);
    assert_eq!(v["result"], 3);
}

#[test]
fn petrie_coefficient_examples() {
    let v = payload(&["petrie", "--d", "2", "--lambda", "2,1"]);
    assert_eq!(v["result"], 1);
    let v = payload(&["petrie", "--d", "2", "--lambda", "3"]);
    assert_eq!(v["result"], 0);
    let v = payload(&["petrie", "--d", "4", "--lambda", "3,2,1", "--method", "both"]);
    let det = payload(&["petrie", "--d", "4", "--lambda", "3,2,1", "--method", "det"]);
    let rule = payload(&["petrie", "--d", "4", "--lambda", "3,2,1", "--method", "rule"]);
    assert_eq!(v["result"], det["result"]);
    assert_eq!(v["result"], rule["result"]);
}

#[test]
fn verify_table_suite_passes() {
    let out = petrie(&["verify", "--suite", "table"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["pass"], true);
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let out = petrie(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn malformed_partition_is_a_usage_error() {
    let out = petrie(&["expand", "--d", "2", "--lambda", "1,2", "--basis", "m"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("decreasing"), "unexpected message: {msg}");
}

#[test]
fn negative_degree_is_a_usage_error() {
    let out = petrie(&["partitions", "--n", "-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zero_truncation_is_a_usage_error() {
    let out = petrie(&["expand", "--d", "0", "--lambda", "2", "--basis", "m"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hd_basis_argument_is_a_usage_error() {
    let out = petrie(&["expand", "--d", "2", "--lambda", "2", "--basis", "hd(2)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn payloads_are_deterministic() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("elapsed_ms");
        serde_json::to_string(&v).unwrap()
    };
    for args in [
        vec!["expand", "--d", "2", "--lambda", "2,2", "--basis", "s"],
        vec!["matrix", "--n", "4", "--d", "3", "--target", "e"],
        vec!["verify", "--suite", "table"],
    ] {
        let a: Value = serde_json::from_slice(&petrie(&args).stdout).unwrap();
        let b: Value = serde_json::from_slice(&petrie(&args).stdout).unwrap();
        assert_eq!(strip(a), strip(b), "args: {args:?}");
    }
}
