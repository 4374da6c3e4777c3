use std::process::{Command, Output};

use rotnum::interval::parse_hex;
use serde_json::Value;

fn rotnum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rotnum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn endpoints(v: &Value) -> (f64, f64) {
    (
        parse_hex(v["lo"].as_str().unwrap()).unwrap(),
        parse_hex(v["hi"].as_str().unwrap()).unwrap(),
    )
}

struct CsvRow {
    param: f64,
    lo: Option<f64>,
    hi: Option<f64>,
    q: Option<u64>,
    status: String,
}

fn staircase_rows(text: &str) -> Vec<CsvRow> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# rotnum-staircase v1"));
    let body: String = lines.map(|l| format!("{l}\n")).collect();
    let mut rdr = csv::Reader::from_reader(body.as_bytes());
    let header = rdr.headers().unwrap().clone();
    assert_eq!(header.iter().skip(1).collect::<Vec<_>>(), ["rho_lo", "rho_hi", "rational_p", "rational_q", "iterates", "status"]);
    rdr.records()
        .map(|r| {
            let r = r.unwrap();
            CsvRow {
                param: r[0].parse().unwrap(),
                lo: r[1].parse().ok(),
                hi: r[2].parse().ok(),
                q: r[4].parse().ok(),
                status: r[6].to_string(),
            }
        })
        .collect()
}

fn assert_monotone(rows: &[CsvRow]) {
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if let (Some(lo), Some(hi)) = (rows[i].lo, rows[j].hi) {
                assert!(lo <= hi, "rows {i} and {j}: {lo} > {hi}");
            }
        }
    }
}

#[test]
fn rigid_linear_contains_alpha() {
    let out = rotnum(&["rho", "--map", "rigid", "--alpha", "0.25", "--method", "linear", "--iters", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let (lo, hi) = endpoints(&v["enclosure"]);
    assert!(lo <= 0.25 && 0.25 <= hi);
    assert_eq!(v["iterates"], 100);
    assert_eq!(v["method"], "linear");
}

#[test]
fn hex_endpoints_round_trip() {
    let out = rotnum(&["rho", "--map", "arnold", "--alpha", "0.45", "--epsilon", "0.159", "--stages", "4"]);
    let v = json(&out);
    let (lo, hi) = endpoints(&v["enclosure"]);
    let again = rotnum(&[
        "rho",
        "--map",
        "rigid",
        "--exact-hex",
        "--alpha",
        v["enclosure"]["lo"].as_str().unwrap(),
        "--method",
        "linear",
        "--iters",
        "1",
    ]);
    let w = json(&again);
    let alpha = &w["map"]["params"]["alpha"];
    assert_eq!(endpoints(alpha), (lo, lo));
    assert!(lo < hi);
}

#[test]
fn dlm_is_conditional_and_matches_table() {
    let out = rotnum(&["rho", "--map", "dlm", "--lambda", "2.12", "--method", "cf", "--stages", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["conditional"], true);
    let (lo, hi) = endpoints(&v["enclosure"]);
    assert!(lo <= 0.153543 && 0.153527 <= hi, "[{lo}, {hi}]");
}

#[test]
fn dlm_outside_range_needs_flag() {
    let out = rotnum(&["rho", "--map", "dlm", "--lambda", "2.3", "--stages", "2"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn exhausted_budget_is_partial() {
    let out = rotnum(&[
        "rho", "--map", "arnold", "--alpha", "0.22", "--epsilon", "0.01", "--stages", "11", "--budget", "2000",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["status"], "budget_exhausted");
    let (lo, hi) = endpoints(&v["enclosure"]);
    assert!(lo <= 0.21980999312 && 0.21980999312 <= hi);
}

#[test]
fn periodic_certifies_three_sevenths() {
    let out = rotnum(&["periodic", "--map", "arnold", "--alpha", "0.43", "--epsilon", "0.159154943", "--q", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let cert = &v["certificate"];
    assert_eq!(cert["p"], 3);
    assert_eq!(cert["q"], 7);
    let near = cert["orbit"].as_array().unwrap().iter().any(|b| {
        let (lo, hi) = endpoints(b);
        lo - 1e-6 <= 0.021337727 && 0.021337727 <= hi + 1e-6
    });
    assert!(near);
}

#[test]
fn periodic_long_cycle() {
    let out = rotnum(&["periodic", "--map", "arnold", "--alpha", "0.2", "--epsilon", "0.159", "--q", "183", "--p", "23"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["certificate"]["p"], 23);
}

#[test]
fn periodic_wrong_p_is_error() {
    let out = rotnum(&["periodic", "--map", "arnold", "--alpha", "0.43", "--epsilon", "0.159154943", "--q", "7", "--p", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["certified"], false);
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        vec!["periodic", "--map", "arnold", "--alpha", "0.43", "--epsilon", "0.159", "--q", "0"],
        vec!["rho", "--map", "arnold", "--alpha", "0.43"],
        vec!["rho", "--map", "circle", "--alpha", "0.43"],
        vec!["rho", "--map", "arnold", "--alpha", "x", "--epsilon", "0.1"],
        vec!["rho", "--map", "arnold", "--alpha", "0.2", "--epsilon", "0.2"],
        vec!["staircase", "--map", "arnold", "--epsilon", "0.1", "--from", "0.3", "--to", "0.2"],
        vec!["staircase", "--map", "arnold", "--epsilon", "0.1", "--from", "0.2", "--to", "0.3", "--points", "1"],
        vec!["bench", "--pairs", "0.2:0.1"],
        vec!["frobnicate"],
    ] {
        let out = rotnum(&args);
        assert_eq!(out.status.code(), Some(64), "{args:?}");
    }
}

#[test]
fn empty_bench_is_noop() {
    let out = rotnum(&["bench", "--pairs", ""]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn bench_reports_large_coefficient() {
    let out = rotnum(&["bench", "--pairs", "0.45:0.01:4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let row = rdr.records().next().unwrap().unwrap();
    assert_eq!(&row[6], "100");
}

#[test]
fn rigid_sweep_brackets_parameter() {
    let out = rotnum(&[
        "staircase", "--map", "arnold", "--epsilon", "0", "--from", "0.05", "--to", "0.45", "--points", "9",
        "--stages", "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = staircase_rows(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(rows.len(), 9);
    for r in &rows {
        assert!(r.lo.unwrap() <= r.param && r.param <= r.hi.unwrap(), "{}", r.param);
    }
    assert_monotone(&rows);
}

#[test]
fn staircase_finds_one_seventh_plateau() {
    let out = rotnum(&[
        "staircase", "--map", "arnold", "--epsilon", "0.159", "--from", "0.2", "--to", "0.22", "--points", "11",
        "--stages", "6",
    ]);
    assert!(matches!(out.status.code(), Some(0) | Some(2)));
    let rows = staircase_rows(std::str::from_utf8(&out.stdout).unwrap());
    let sevenths: Vec<_> = rows.iter().filter(|r| r.q == Some(7)).collect();
    assert!(sevenths.iter().any(|r| (r.param - 0.21).abs() < 1e-12), "no 1/7 row at 0.21");
    for r in &sevenths {
        assert_eq!(r.status, "rational");
    }
    assert_monotone(&rows);
}

#[test]
fn staircase_order_ignores_thread_count() {
    let args = [
        "staircase", "--map", "arnold", "--epsilon", "0.1", "--from", "0.1", "--to", "0.4", "--points", "12",
        "--stages", "4",
    ];
    let one = Command::new(env!("CARGO_BIN_EXE_rotnum"))
        .args(args)
        .env("ROTNUM_THREADS", "1")
        .output()
        .unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_rotnum"))
        .args(args)
        .env("ROTNUM_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(one.stdout, four.stdout);
    let rows = staircase_rows(std::str::from_utf8(&one.stdout).unwrap());
    assert!(rows.windows(2).all(|w| w[0].param < w[1].param));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rho.json");
    let out = rotnum(&[
        "rho", "--map", "rigid", "--alpha", "0.375", "--stages", "5", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["rational"]["q"], 8);
    assert_eq!(v["rational"]["p"], 3);
}
