// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::process::{Command, Output};

fn permlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn compute_published_permanents() {
    let o = permlab(&["compute", "per", "corpus:tran_H"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "504"));
    let o = permlab(&["compute", "per", "corpus:shchesnovich"]);
    assert_eq!(stdout(&o).trim(), "814016640");
    let o = permlab(&["compute", "per", "corpus:drury_Z"]);
    assert_eq!(stdout(&o).trim(), "2977257622144118400");
    let o = permlab(&["compute", "per", "corpus:grone_pierce_Y3"]);
    assert_eq!(stdout(&o).trim(), "3/2");
}

#[test]
fn lieb_polynomial_of_j2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("J2.json");
    fs::write(&path, r#"{"n":2,"entries":[[1,0],[1,0],[1,0],[1,0]]}"#).unwrap();
    let o = permlab(&["compute", "lieb-poly", "1", path.to_str().unwrap()]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "[1, 1]"));
}

#[test]
fn json_values_keep_17_digits() {
    let o = permlab(&["--output", "json", "compute", "per", "corpus:tran_H"]);
    let text = stdout(&o);
    assert!(text.contains(r#""re":5.0400000000000000e2"#), "{text}");
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["exact"], "504");
}

#[test]
fn pot_on_tran_h_is_an_expected_violation() {
    let o = permlab(&["verify", "pot", "corpus:tran_H"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("violated, margin -8"), "{}", stdout(&o));
}

#[test]
fn corpus_all_is_the_regression_gate() {
    let o = permlab(&["verify", "corpus-all"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("7 entries, all published values matched"));
    let o = permlab(&["--output", "json-lines", "verify", "corpus-all"]);
    assert_eq!(stdout(&o).lines().count(), 7);
}

#[test]
fn theorem_campaign_passes() {
    let o = permlab(&["verify", "classical-chain", "--seed", "7", "--trials", "200", "--n", "6"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains(": 0 violations"), "{}", stdout(&o));
}

#[test]
fn unexpected_verdict_on_corpus_is_a_mismatch() {
    // Tran's H violates PATE08; with an impossible tolerance nothing is violated.
    let o = permlab(&["--tol", "1", "verify", "pate08", "corpus:tran_H"]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    assert!(stdout(&o).contains("MISMATCH"));
}

#[test]
fn output_is_identical_across_runs_and_worker_counts() {
    let args = ["--output", "json-lines", "verify", "bs38", "--seed", "3", "--trials", "20", "--n", "4"];
    let a = permlab(&args);
    let b = permlab(&args);
    let mut one = vec!["--workers", "1"];
    one.extend_from_slice(&args);
    let c = permlab(&one);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert_eq!(stdout(&a).lines().count(), 21);
}

#[test]
fn search_in_proved_range_finds_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let witness = dir.path().join("w.json");
    let o = permlab(&["search", "pot", "--n", "3", "--budget", "1000", "--seed", "1", "--witness", witness.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("no violation in 1000 samples"));
    assert!(!witness.exists());
}

#[test]
fn search_writes_log_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("log.jsonl");
    let witness = dir.path().join("w.json");
    // Random Hermitian PSD matrices violate BS40 only rarely, but with
    // --tol -1 every sample counts as a violation, exercising the write path.
    let o = permlab(&[
        "--tol=-1",
        "search",
        "bs40",
        "--n",
        "4",
        "--rank",
        "2",
        "--budget",
        "10",
        "--seed",
        "5",
        "--log",
        log.to_str().unwrap(),
        "--witness",
        witness.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(fs::read_to_string(&log).unwrap().lines().count() >= 1);
    let text = fs::read_to_string(&witness).unwrap();
    assert!(text.contains("gram_factor"));
    let o = permlab(&["verify", "bs40", witness.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
}

#[test]
fn parse_and_precondition_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"n":2"#).unwrap();
    assert_eq!(code(&permlab(&["compute", "per", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&permlab(&["compute", "per", "corpus:nothing"])), 2);
    assert_eq!(code(&permlab(&["verify", "no-such-id", "corpus:tran_H"])), 2);
    assert_eq!(code(&permlab(&["verify", "pot"])), 2);
    assert_eq!(code(&permlab(&["frobnicate"])), 2);
    let not_psd = dir.path().join("np.json");
    fs::write(&not_psd, r#"{"n":2,"entries":[[1,0],[2,0],[2,0],[1,0]]}"#).unwrap();
    let o = permlab(&["verify", "pot", not_psd.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("NotPsd"));
    let o = permlab(&["compute", "lieb-poly", "2", "corpus:grone_pierce_Y3"]);
    assert_eq!(code(&o), 0);
    let o = permlab(&["compute", "lieb-poly", "3", "corpus:grone_pierce_Y3"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("BadBlockSize"));
}

#[test]
fn corpus_list_and_spectrum() {
    let o = permlab(&["corpus", "list"]);
    assert_eq!(stdout(&o).lines().count(), 7);
    let o = permlab(&["spectrum", "corpus:tran_H"]);
    let text = stdout(&o);
    assert!(text.contains("512^5 504^1 448^5 384^4 320^4 240^4 160^4"), "{text}");
    assert!(text.contains("(3,2)"));
    let o = permlab(&["--output", "json", "spectrum", "corpus:drury_Z", "--of", "bs40"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ratio = v["top"].as_f64().unwrap() / v["per_A"].as_f64().unwrap();
    assert!((1.016..=1.018).contains(&ratio));
}
