//! End-to-end checks of the binary: exit codes, output determinism across
//! runs and thread counts, and the documented file formats.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn inscx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_inscx"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("inscx-test-{name}-{}", std::process::id()));
    fs::write(&path, contents).unwrap();
    path
}

#[test]
fn homology_of_circle_fixture() {
    let input = write_temp("circle", "a\nab\nba\nb\n");
    let out = inscx(&["homology", input.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("H_0 : betti 1"), "{text}");
    assert!(text.contains("H_1 : betti 1"), "{text}");
    assert!(text.contains("euler 0"), "{text}");
    fs::remove_file(input).ok();
}

#[test]
fn json_report_shape() {
    let input = write_temp("sphere", "a\naa\nb\nbb\nab\nba\nbab\naba\n");
    let out = inscx(&["homology", input.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["block_counts"], serde_json::json!([8, 12, 6]));
    assert_eq!(v["dims"][2]["betti"], 1);
    assert_eq!(v["euler"], 2);
    fs::remove_file(input).ok();
}

#[test]
fn output_is_byte_identical_across_runs_and_threads() {
    let input = write_temp("det", "_\na\nb\nc\nab\nac\nbc\nabc\n");
    let base = inscx(&["homology", input.to_str().unwrap(), "--json"]);
    for args in [
        vec!["homology", input.to_str().unwrap(), "--json"],
        vec!["--threads", "1", "homology", input.to_str().unwrap(), "--json"],
        vec!["--threads", "4", "homology", input.to_str().unwrap(), "--json"],
    ] {
        let out = inscx(&args);
        assert!(out.status.success());
        assert_eq!(out.stdout, base.stdout, "output differs for {args:?}");
    }
    let blocks_a = inscx(&["blocks", input.to_str().unwrap()]);
    let blocks_b = inscx(&["--threads", "3", "blocks", input.to_str().unwrap()]);
    assert_eq!(blocks_a.stdout, blocks_b.stdout);
    fs::remove_file(input).ok();

    // the parallel scan in verify is deterministic too
    let scan_a = inscx(&["--threads", "1", "verify", "cycles", "--max-len", "3", "--json"]);
    let scan_b = inscx(&["--threads", "4", "verify", "cycles", "--max-len", "3", "--json"]);
    assert!(scan_a.status.success());
    assert_eq!(scan_a.stdout, scan_b.stdout);
}

#[test]
fn homology_with_both_coefficient_rings() {
    let input = write_temp("both", "a\nab\nba\nb\n");
    let out = inscx(&[
        "homology",
        input.to_str().unwrap(),
        "--coefficients",
        "both",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("H_1 : betti 1"), "{text}");
    assert!(text.contains("Z2 betti: [1, 1]"), "{text}");
    fs::remove_file(input).ok();
}

#[test]
fn canon_and_classify_examples() {
    let out = inscx(&["canon", "(a)ab"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "a(a)b\n");

    let out = inscx(&["classify", "(a)(b)(a)(b)"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("class 4.1"), "{text}");
}

#[test]
fn graph_emits_dot() {
    let input = write_temp("dot", "a\nab\n");
    let out = inscx(&["graph", input.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph insertion {"), "{text}");
    assert!(text.contains("\"a\" -> \"ab\";"), "{text}");
    fs::remove_file(input).ok();
}

#[test]
fn cubical_with_oracle_check() {
    let input = write_temp(
        "cubical",
        r#"{"ambient": 2, "cubes": [[[0, 1], [0]], [[0, 1], [1]], [[0], [0, 1]], [[1], [0, 1]]]}"#,
    );
    let out = inscx(&["cubical", input.to_str().unwrap(), "--check-oracle"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("words  : 8"), "{text}");
    assert!(text.contains("(match)"), "{text}");
    fs::remove_file(input).ok();
}

#[test]
fn verify_suites_pass() {
    let out = inscx(&["verify", "cycles", "--max-len", "3"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("PASS"));

    let out = inscx(&["verify", "null-homology", "--pairs", "3", "--seed", "5"]);
    assert!(out.status.success());

    let out = inscx(&["verify", "sphere-search"]);
    assert!(out.status.success());

    let out = inscx(&["verify", "word-equations", "--max-len", "2"]);
    assert!(out.status.success());
}

#[test]
fn seeded_runs_are_reproducible() {
    let a = inscx(&["verify", "null-homology", "--pairs", "5", "--seed", "9", "--json"]);
    let b = inscx(&["verify", "null-homology", "--pairs", "5", "--seed", "9", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let c = inscx(&["verify", "null-homology", "--pairs", "5", "--seed", "10", "--json"]);
    assert_ne!(a.stdout, c.stdout, "different seeds sample different pairs");
}

#[test]
fn exit_codes() {
    // input error: missing file
    let out = inscx(&["homology", "/nonexistent/words.txt"]);
    assert_eq!(out.status.code(), Some(2));
    // input error: malformed block expression
    let out = inscx(&["canon", "(a"]);
    assert_eq!(out.status.code(), Some(2));
    // input error: word uses a reserved character
    let input = write_temp("bad", "a\na_b\n");
    let out = inscx(&["homology", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    fs::remove_file(input).ok();
    // guard: cycle scan beyond the hard limit
    let out = inscx(&["verify", "cycles", "--max-len", "11"]);
    assert_eq!(out.status.code(), Some(3));
    // guard: large sphere search needs --long-run
    let out = inscx(&["verify", "sphere-search", "--n", "6"]);
    assert_eq!(out.status.code(), Some(3));
    // usage errors are clap's exit 2
    let out = inscx(&["verify", "unknown-suite"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_flag_writes_file() {
    let input = write_temp("out", "a\nab\n");
    let dest = write_temp("dest", "");
    let out = inscx(&[
        "homology",
        input.to_str().unwrap(),
        "--json",
        "--output",
        dest.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&dest).unwrap()).unwrap();
    assert_eq!(v["words"], 2);
    fs::remove_file(input).ok();
    fs::remove_file(dest).ok();
}
