use std::process::Command;

use serde_json::{json, Value};

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sheafsym")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(stdout.trim()).unwrap_or(Value::Null);
    (out.status.code().unwrap(), value, String::from_utf8(out.stderr).unwrap())
}

#[test]
fn symbol_statistics() {
    assert_eq!(run(&["avalue", "[1,2|0,3]"]).1, json!({"a": 3}));
    assert_eq!(run(&["bvalue", "Y[0,3,5|1,5]"]).1, json!({"b": 4}));
    assert_eq!(run(&["springer", "--type", "C", "Y[0,3,5|1,5]"]).1, json!({"dim_bu": 4, "dim_class": 24, "n": 4}));
}

#[test]
fn delta_of_the_rank_four_pair() {
    let (code, v, _) = run(&["delta", "--type", "C", "[1,2|0,3]"]);
    assert_eq!(code, 0);
    assert_eq!(v["springer"], "Y[0,3,5|1,5]");
    assert_eq!(v["b"], 4);
    assert_eq!(run(&["delta", "--type", "C", "[0,3|1,2]"]).1["springer"], "Y[0,2,6|2,4]");
}

#[test]
fn induction_from_d() {
    let (code, v, _) = run(&["induce", "--shape", "d_in_b", "--pair", "[1,2|0,3]", "[|]"]);
    assert_eq!(code, 0);
    assert_eq!(v["induced"], json!({"[0,3|1,2]": 1, "[1,2|0,3]": 1}));
}

#[test]
fn jset_sizes() {
    let (code, v, _) = run(&["jset", "--type", "B", "--t", "1", "--pair", "[0,1,2,3,4|0,1]", "[0,2|1]"]);
    assert_eq!(code, 0);
    assert_eq!(v["size"], 4);
    assert_eq!(v["ell"], 3);
}

#[test]
fn character_value() {
    let (code, v, _) = run(&[
        "charvalue",
        "--type",
        "B",
        "--n",
        "4",
        "--a",
        "2",
        "--b",
        "2",
        "--t",
        "1",
        "--pair",
        "[0,1,2,3,4|0,1]",
        "[0,1,2,3,4|0,1]",
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v, json!({"q_exponent": 4, "sign": 1}));
}

#[test]
fn appendix_verification_reports_errata() {
    let (code, v, _) = run(&["verify", "appendix", "--type", "C", "--d", "4t+1", "--t", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["mismatches"], json!([]));
    assert_eq!(v["errata"].as_array().unwrap().len(), 4);
}

#[test]
fn property_verification_separates_refuted_claims() {
    let (code, v, _) = run(&["verify", "properties", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["mismatches"], json!([]));
    assert!(!v["refuted"].as_array().unwrap().is_empty());
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["normalize", "[1,1|0]"]);
    assert_eq!(code, 1);
    assert!(serde_json::from_str::<Value>(err.trim()).unwrap()["error"].is_string());
    assert_eq!(run(&["normalize", "[0,1|0"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["rank", "[0,2|1]"]).0, 0);
}
