use std::process::{Command, Output};

use serde_json::Value;

fn dcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcount"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = dcount(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("one JSON document")
}

fn stdout(args: &[&str]) -> String {
    let out = dcount(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn count_examples() {
    let v = json(&["count", "--field", "5", "--coeffs", "1,4", "--target", "1"]);
    assert_eq!(v["count"], "5");
    assert_eq!(v["domain"], "full");
    assert_eq!(v["structure"]["kind"], "field");
    assert_eq!(v["coeffs"], serde_json::json!([1, 4]));

    let v = json(&["count", "--ring", "4", "--coeffs", "1,1", "--target", "0"]);
    assert_eq!(v["count"], "2");
    assert_eq!(v["structure"], serde_json::json!({"kind": "ring", "n": 4}));
}

#[test]
fn brute_matches_sieve_over_f9() {
    let base = ["count", "--field", "3^2", "--coeffs", "1,1,1", "--target", "0", "--method"];
    let brute = json(&[&base[..], &["brute"]].concat());
    let sieve = json(&[&base[..], &["sieve"]].concat());
    assert_eq!(brute["count"], sieve["count"]);
    assert_eq!(brute["method"], "brute");
    assert_eq!(sieve["method"], "sieve-dp");
}

#[test]
fn units_domain() {
    let v = json(&["count", "--field", "5", "--coeffs", "1,4", "--target", "1", "--domain", "units"]);
    assert_eq!(v["count"], "3");
    assert_eq!(v["domain"], "units");
}

#[test]
fn counts_are_decimal_strings() {
    // (101)_20 / 101 is far beyond 2^53
    let coeffs = (1..=20).map(|i| i.to_string()).collect::<Vec<_>>().join(",");
    let v = json(&["count", "--field", "101", "--coeffs", &coeffs, "--target", "3", "--method", "recurrence"]);
    let n: u128 = v["count"].as_str().unwrap().parse().unwrap();
    assert!(n > 1 << 53);
}

#[test]
fn table_rows() {
    assert_eq!(
        stdout(&["table", "--field", "5", "--coeffs", "1,4"]),
        "b,count\n0,0\n1,5\n2,5\n3,5\n4,5\n"
    );
    let t = stdout(&["table", "--field", "5", "--coeffs", "1,1"]);
    assert!(t.lines().skip(1).all(|l| l.ends_with(",4")));
    assert_eq!(t.lines().count(), 6);
}

#[test]
fn table_column_sum_is_falling_factorial() {
    let t = stdout(&["table", "--field", "2^3", "--coeffs", "1,2,3"]);
    let total: u64 = t.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 8 * 7 * 6);
    let t = stdout(&["table", "--ring", "6", "--coeffs", "2,3"]);
    let total: u64 = t.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 30);
}

#[test]
fn census_output() {
    let v = json(&["census", "--q", "5"]);
    assert_eq!(v["census"], "4");
    assert_eq!(v["interpolation"], "4");
    let v = json(&["census", "--q", "9"]);
    assert_eq!(v["interpolation"], Value::Null);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| dcount(args).status.code();
    assert_eq!(code(&["count", "--field", "6", "--coeffs", "1", "--target", "0"]), Some(2));
    assert_eq!(code(&["count", "--field", "5", "--coeffs", "1,9", "--target", "0"]), Some(2));
    assert_eq!(code(&["count", "--field", "5", "--ring", "5", "--coeffs", "1", "--target", "0"]), Some(2));
    assert_eq!(code(&["count", "--coeffs", "1", "--target", "0"]), Some(2));
    assert_eq!(code(&["table", "--field", "5", "--coeffs", "1", "--domain", "units"]), Some(2));
    assert_eq!(
        code(&["count", "--field", "7", "--coeffs", "1,2,3", "--target", "0", "--method", "brute", "--budget-brute", "10"]),
        Some(3)
    );
    assert_eq!(code(&["census", "--q", "16"]), Some(3));
    assert_eq!(code(&["verify", "--suite", "census"]), Some(0));
}

#[test]
fn injected_fault_is_reported() {
    let out = dcount(&["verify", "--suite", "cross-method", "--max-q", "3", "--max-k", "3", "--samples", "20", "--inject-fault", "flip-sieve-sign"]);
    assert_eq!(out.status.code(), Some(4));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let repro = &report["summary"]["reproducer"];
    assert_eq!(repro["agree"], false);
    assert!(repro["instance"].as_str().unwrap().starts_with("field 2 coeffs [0] target 0"));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--max-q", "4", "--max-k", "3", "--samples", "10", "--max-n", "5", "--bibak-samples", "20", "--seed", "9"];
    assert_eq!(dcount(&args).stdout, dcount(&args).stdout);
    let bench = ["bench", "--min-k", "2", "--max-k", "5", "--methods", "recurrence,sieve"];
    let strip = |o: Output| {
        String::from_utf8(o.stdout)
            .unwrap()
            .lines()
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                format!("{},{},{}", f[0], f[1], f[3])
            })
            .collect::<Vec<_>>()
    };
    assert_eq!(strip(dcount(&bench)), strip(dcount(&bench)));
}

#[test]
fn bench_rows() {
    let out = stdout(&["bench", "--field", "5", "--min-k", "2", "--max-k", "6", "--budget-brute", "100"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("method,k,millis,count"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 5 * 4);
    // brute refuses once (5)_k exceeds 100 tuples
    assert!(rows.iter().any(|r| r[0] == "brute" && r[2].is_empty() && r[3] == "budget-exceeded"));
    for k in ["2", "3", "4", "5", "6"] {
        let counts: Vec<&str> = rows
            .iter()
            .filter(|r| r[1] == k && r[3] != "budget-exceeded")
            .map(|r| r[3])
            .collect();
        assert!(counts.windows(2).all(|w| w[0] == w[1]), "k = {k}: {counts:?}");
    }
}

#[test]
fn csv_count() {
    assert_eq!(
        stdout(&["count", "--ring", "4", "--coeffs", "1,1", "--target", "0", "--format", "csv"]),
        "structure,coeffs,target,domain,method,count\nZ/4Z,\"1,1\",0,full,closed-form:bibak,2\n"
    );
}
