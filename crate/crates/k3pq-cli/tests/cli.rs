use std::process::{Command, Output};

use k3pq::curves::{canonical_key, dp_delta, CurveAction, GroupSpec};
use k3pq::records::{CandidateRecord, CurveRecord, K3Flag, K3Record};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3pq")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn records<T: serde::de::DeserializeOwned + serde::Serialize>(text: &str) -> Vec<T> {
    text.lines()
        .map(|line| {
            let value: T = serde_json::from_str(line).unwrap();
            assert_eq!(serde_json::to_string(&value).unwrap(), line, "record does not round-trip");
            value
        })
        .collect()
}

#[test]
fn curves_of_order_three() {
    let recs: Vec<CurveRecord> = records(&stdout(&["curves", "--order", "3", "--max-branch-points", "6"]));
    assert_eq!(recs.len(), 4);
    let top = recs.iter().find(|c| c.genus == 4).expect("genus 4 curve");
    let mut alpha = top.alpha.clone();
    alpha.sort();
    assert_eq!(alpha, vec![1, 3]);
    assert_eq!(top.branch.iter().map(|b| b[2]).sum::<i64>(), 6);
}

#[test]
fn curves_include_the_reference_curve() {
    let g = GroupSpec::new(5, false).unwrap();
    let want = canonical_key(&dp_delta(5).unwrap());
    let recs: Vec<CurveRecord> = records(&stdout(&["curves", "--order", "5", "--branch-points", "3"]));
    let keys: Vec<Vec<i64>> = recs
        .iter()
        .map(|r| {
            let entries: Vec<(i64, i64, i64)> = r.branch.iter().map(|&[m, t, k]| (m, t, k)).collect();
            canonical_key(&CurveAction::from_ramification(g, &entries).unwrap())
        })
        .collect();
    assert!(keys.contains(&want));
}

#[test]
fn bound_violations_exit_with_two() {
    for args in [
        &["curves", "--order", "6", "--branch-points", "99"][..],
        &["curves", "--order", "9", "--branch-points", "3"],
        &["curves", "--order", "5"],
        &["classify", "--order", "6"],
        &["classify", "--order", "10", "--t1", "23", "--t2", "3"],
        &["verify", "--table", "3"],
        &["verify", "--table", "1", "--rows", "q=3"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn classify_finds_known_surfaces() {
    for (args, k2) in [
        (&["classify", "--order", "5", "--t1", "5", "--t2", "3"][..], -12),
        (&["classify", "--order", "6", "--t1", "12", "--t2", "3"], -36),
        (&["classify", "--order", "3", "--t1", "3", "--t2", "3"], 0),
    ] {
        let recs: Vec<CandidateRecord> = records(&stdout(args));
        assert!(recs.iter().any(|r| r.k2 == k2 && r.k3_candidate), "{args:?}");
    }
}

#[test]
fn k3_reports_verdict_and_fixed_locus() {
    let recs: Vec<K3Record> = records(&stdout(&["k3", "--order", "5", "--t1", "5", "--t2", "3"]));
    let hit = recs.iter().find(|r| r.candidate.k2 == -12).expect("K2 = -12 surface");
    assert_eq!(hit.verdict.is_k3, K3Flag::Decided(true));
    assert_eq!(hit.verdict.fixed_locus, Some((7, Some(0), 1)));
    assert_eq!(hit.verdict.contractions, 12);
}

#[test]
fn output_does_not_depend_on_jobs() {
    for args in [
        &["classify", "--order", "5", "--t1", "5", "--t2", "3"][..],
        &["k3", "--order", "6", "--t1", "6", "--t2", "3", "--format", "tsv"],
        &["curves", "--order", "14", "--max-branch-points", "12", "--primitive-only"],
        &["classify", "--order", "3"],
    ] {
        let one = stdout(&[args, &["--jobs", "1"]].concat());
        let four = stdout(&[args, &["--jobs", "4"]].concat());
        let again = stdout(&[args, &["--jobs", "4"]].concat());
        assert_eq!(one, four, "{args:?}");
        assert_eq!(four, again, "{args:?}");
    }
}

#[test]
fn tsv_flattens_singularities() {
    let text = stdout(&["classify", "--order", "5", "--t1", "5", "--t2", "3", "--format", "tsv"]);
    assert!(text.lines().next().unwrap().starts_with("order\t"));
    assert!(text.contains("10×5/1 5×5/3"));
}

#[test]
fn verify_table_one_first_block() {
    let out = run(&["verify", "--table", "1", "--rows", "p=3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["summary"]["matched"], 4);
    assert_eq!(doc["summary"]["rows"], 4);
}

#[test]
fn verify_table_two_k2_column() {
    let out = run(&["verify", "--table", "2", "--rows", "p=3"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let derived: Vec<i64> = doc["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            let cell = r["cells"].as_array().unwrap().iter().find(|c| c["cell"] == "K2").unwrap();
            cell["derived"].as_str().unwrap().parse().unwrap()
        })
        .collect();
    assert_eq!(derived, vec![-36, -31, -26, -21, -24, -16, -19, -21, -11, -14, -16, -7, -11, -3, -9, -2, -6, 0]);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("k3pq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("curves.tsv");
    let printed = stdout(&["curves", "--order", "3", "--branch-points", "3", "--format", "tsv"]);
    stdout(&["curves", "--order", "3", "--branch-points", "3", "--format", "tsv", "--out", path.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), printed);
    std::fs::remove_dir_all(&dir).unwrap();
}
