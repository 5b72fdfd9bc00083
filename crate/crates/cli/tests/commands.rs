use std::collections::BTreeSet;
use std::process::{Command, Output};

use powermap_cli::dump::RowTable;
use powermap_cli::sweep::{run_sweep, KPolicy, SweepConfig};
use powermap_cli::{analyze, AnalysisReport};
use serde_json::Value;

fn pmspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmspec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    pmspec(args).status.code().expect("exit code")
}

fn pairs(v: &Value) -> Vec<(u64, u64)> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|e| (e[0].as_u64().unwrap(), e[1].as_u64().unwrap()))
        .collect()
}

fn strip_timing(text: &str) -> Value {
    let mut v: Value = serde_json::from_str(text).unwrap();
    v.as_object_mut()
        .unwrap()
        .remove("timing_ms")
        .expect("timing present");
    v
}

#[test]
fn analyze_reports_frozen_spectra() {
    let out = pmspec(&["analyze", "--p", "2", "--m", "3", "--k", "1"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        pairs(&v["differential"]),
        vec![(0, 35), (2, 27), (4, 1), (6, 1)]
    );
    assert_eq!(pairs(&v["boomerang"]), vec![(0, 33), (2, 27), (4, 3)]);
    assert_eq!(v["status"], "pass");
    for key in [
        "params",
        "differential",
        "boomerang",
        "predicted",
        "verdicts",
        "timing_ms",
        "degenerate",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }

    let out = pmspec(&["analyze", "--p", "2", "--m", "4", "--k", "3"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(pairs(&v["boomerang"]), vec![(0, 134), (2, 121)]);
    assert_eq!(v["summary"]["boomerang_uniformity"], 2);
    assert_eq!(v["params"]["d"], 45);
}

#[test]
fn analyze_csv_lists_both_sources() {
    let out = pmspec(&[
        "analyze", "--p", "7", "--m", "1", "--k", "1", "--format", "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("kind,source,multiplicity,count\n"));
    assert!(text.contains("differential,brute,5,1\n"));
    assert!(text.contains("differential,predicted,5,1\n"));
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let args = ["analyze", "--p", "3", "--m", "2", "--k", "3"];
    let a = String::from_utf8(pmspec(&args).stdout).unwrap();
    let b = String::from_utf8(pmspec(&args).stdout).unwrap();
    assert_eq!(strip_timing(&a), strip_timing(&b));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["verify", "--p", "11", "--m", "1", "--k", "7"]), 0);
    assert_eq!(code(&["verify", "--p", "3", "--m", "2", "--k", "1"]), 0);
    assert_eq!(
        code(&[
            "verify",
            "--p",
            "2",
            "--m",
            "3",
            "--k",
            "1",
            "--inject-fault"
        ]),
        1
    );
    assert_eq!(code(&["analyze", "--p", "4", "--m", "1", "--k", "1"]), 2);
    assert_eq!(code(&["analyze", "--p", "2", "--m", "13", "--k", "1"]), 3);
    assert_eq!(
        code(&["dump", "--p", "2", "--m", "2", "--k", "1", "--table", "sbox"]),
        2
    );
}

#[test]
fn non_coprime_k_names_modulus_and_gcd() {
    let out = pmspec(&["analyze", "--p", "5", "--m", "1", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("q+1") && err.contains("gcd(2, 6) = 2"),
        "{err}"
    );
}

#[test]
fn verify_reports_branch_and_first_mismatch() {
    let out = pmspec(&["verify", "--p", "3", "--m", "2", "--k", "1"]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("p odd otherwise"));
    let out = pmspec(&[
        "verify",
        "--p",
        "2",
        "--m",
        "3",
        "--k",
        "1",
        "--inject-fault",
    ]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("multiplicity 0: brute 35, predicted 36"),
        "{err}"
    );
}

#[test]
fn dump_rows() {
    let dir = tempfile::tempdir().unwrap();
    let ddt = dir.path().join("ddt.csv");
    let args = [
        "dump", "--p", "2", "--m", "2", "--k", "1", "--table", "ddt-row", "--out",
    ];
    assert_eq!(code(&[&args[..], &[ddt.to_str().unwrap()]].concat()), 0);
    let text = std::fs::read_to_string(&ddt).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("b_index,count"));
    let rows: Vec<(u32, u64)> = lines
        .map(|l| {
            let (b, c) = l.split_once(',').unwrap();
            (b.parse().unwrap(), c.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 16);
    assert_eq!(rows.iter().map(|r| r.1).sum::<u64>(), 16);
    assert!(rows.iter().enumerate().all(|(i, r)| r.0 == i as u32));

    let bct = powermap_cli::dump(2, 2, 1, RowTable::BctRow).unwrap();
    let rows: Vec<&str> = bct.lines().skip(1).collect();
    assert_eq!(rows.len(), 15);
    assert!(rows[0].starts_with("1,"));
    for row in rows {
        let c: u64 = row.split_once(',').unwrap().1.parse().unwrap();
        assert!(c == 0 || c == 2);
    }
}

#[test]
fn report_json_round_trips_and_revalidates() {
    let report = analyze(5, 1, 1, None).unwrap();
    let text = report.to_json_pretty();
    assert_eq!(AnalysisReport::from_json(&text).unwrap(), report);

    let mut bad: Value = serde_json::from_str(&text).unwrap();
    bad["differential"][0][1] = Value::from(bad["differential"][0][1].as_u64().unwrap() + 1);
    assert!(AnalysisReport::from_json(&bad.to_string()).is_err());

    let mut bad: Value = serde_json::from_str(&text).unwrap();
    bad["status"] = Value::from("fail");
    assert!(AnalysisReport::from_json(&bad.to_string()).is_err());
}

fn sweep_records(
    p_list: Vec<u32>,
    m_max: u32,
    workers: usize,
) -> (powermap_cli::sweep::SweepSummary, BTreeSet<String>) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("results.jsonl");
    let config = SweepConfig {
        p_list,
        m_max,
        k_policy: KPolicy::AllCoprime,
        out: out.clone(),
        workers,
    };
    let summary = run_sweep(&config).unwrap();
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.ends_with('\n'));
    let records = text
        .lines()
        .map(|l| {
            AnalysisReport::from_json(l).unwrap();
            strip_timing(l).to_string()
        })
        .collect();
    (summary, records)
}

#[test]
fn sweep_characteristic_two() {
    let (summary, records) = sweep_records(vec![2], 4, 2);
    // k ranges over units mod 3, 5, 9, 17
    assert_eq!(summary.total, 2 + 4 + 6 + 16);
    assert_eq!(summary.passed, summary.total);
    assert_eq!(summary.degenerate, 2);
    assert_eq!(records.len(), summary.total);
}

#[test]
fn sweep_odd_characteristic() {
    let (summary, _) = sweep_records(vec![3, 5, 7], 2, 2);
    assert_eq!(summary.failed, 0);
    assert_eq!(summary.passed, summary.total);
}

#[test]
fn sweep_is_independent_of_worker_count() {
    let (a, ra) = sweep_records(vec![2, 3], 3, 1);
    let (b, rb) = sweep_records(vec![2, 3], 3, 4);
    assert_eq!(a, b);
    assert_eq!(ra, rb);
}

#[test]
fn sweep_appends_and_validates_input() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let path = out.to_str().unwrap();
    let base = ["sweep", "--m-max", "1", "--out", path];
    assert_eq!(code(&[&base[..], &["--p-list", "3"]].concat()), 0);
    assert_eq!(code(&[&base[..], &["--p-list", "3"]].concat()), 0);
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 4);

    assert_eq!(code(&base), 2);
    let missing = dir.path().join("no/such/dir/r.jsonl");
    assert_eq!(
        code(&[
            "sweep",
            "--p-list",
            "3",
            "--m-max",
            "1",
            "--out",
            missing.to_str().unwrap()
        ]),
        2
    );
    assert_eq!(
        code(&["sweep", "--p-list", "2", "--m-max", "13", "--out", path]),
        3
    );
    assert_eq!(
        code(&[
            "sweep",
            "--p-list",
            "5",
            "--m-max",
            "1",
            "--k-policy",
            "list",
            "--ks",
            "1,2,5",
            "--out",
            path
        ]),
        0
    );
}
