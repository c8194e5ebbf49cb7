use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mpav")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn count_compositions_and_multisets() {
    let out = run(&["count", "--patterns", "111;1212", "--n", "24"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], "104335");
    assert_eq!(v["mode"], "composition");
    assert_eq!(v["patterns"], "111;1212");

    let v = json(&run(&["count", "--patterns", "112", "--multiset", "3"]));
    assert_eq!(v["count"], "1");
    let v = json(&run(&["count", "--patterns", "{121,1342}", "--multiset", "2,2,2,2,2"]));
    assert_eq!(v["count"], "750");
    assert_eq!(v["input"], "2,2,2,2,2");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["count", "--patterns", "13", "--n", "5"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--patterns", "12", "--multiset", "2,0"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--patterns", "12", "--n", "3", "--multiset", "2"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--patterns", "12"]).status.code(), Some(2));
    assert_eq!(run(&["reproduce", "--table", "appendix9"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--rule", "R_nope"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--bijection", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["ferrers", "--check", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["count", "--patterns", "12", "--n", "3", "--threads", "0"]).status.code(), Some(2));
}

#[test]
fn reproduce_filtered_rows() {
    let out = run(&["reproduce", "--table", "appendix1", "--filter", "121,1342"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["status"] == "PASS"));
    assert_eq!(rows[0]["computed"], serde_json::json!(["78034", "113633", "164728"]));

    let out = run(&["reproduce", "--table", "appendix1", "--filter", "nonexistent"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["checked"], 0);
}

#[test]
fn csv_output() {
    let out = run(&["--format", "csv", "count", "--patterns", "121;1342", "--multiset", "2,2,2,2,2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("patterns,mode,input,count,elapsed_ms"));
    assert!(lines.next().unwrap().starts_with("121;1342,multiset,\"2,2,2,2,2\",750,"));
}

#[test]
fn output_independent_of_threads() {
    let args = ["classify", "--family", "3x3", "--mode", "multiset", "--bound", "6"];
    let one = run(&[&["--threads", "1"], &args[..]].concat());
    let two = run(&[&["--threads", "3"], &args[..]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
}

#[test]
fn verify_commands() {
    let out = run(&["verify", "--rule", "R_112_2212", "--max-size", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"][0]["passed"], true);

    let out = run(&["verify", "--bijection", "encoding", "--max-size", "6"]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["verify", "--statement", "family-7", "--max-size", "6", "--r", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"][0]["r"], 3);
}

#[test]
fn conjecture_small_bound() {
    let out = run(&["conjecture", "--n-max", "14"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["all_equal"], true);
    assert_eq!(v["pairs"][0]["left_series"].as_array().unwrap().len(), 14);
}

#[test]
fn ferrers_checks() {
    let out = run(&["ferrers", "--check", "ft-312-231", "--max-cells", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["ferrers", "--check", "setsf:231;221:312;212", "--max-cells", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&run(&["ferrers", "--check", "sf-2i12j", "--max-cells", "6"]));
    assert_eq!(v["results"].as_array().unwrap().len(), 6);
    // a failing check exits 1 and carries a witness
    let out = run(&["ferrers", "--check", "sf:1:12", "--max-cells", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["results"][0]["holds"], false);
    assert_eq!(v["results"][0]["witness"]["shape"], "1");
}
