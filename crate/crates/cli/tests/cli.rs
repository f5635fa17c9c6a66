//! Runs the `slocc` binary end to end and checks output and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn slocc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slocc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn classify_ghz_fixture() {
    let o = slocc(&["classify", "--state", "fixture:ghz"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.matches("CP10").count(), 3, "{out}");
    assert!(out.contains("family 00s1s2"));
}

#[test]
fn classify_small_reports_tangle() {
    let o = slocc(&["classify", "--state", "fixture:ghz", "--small"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("1/4"), "{out}");
    assert!(out.contains("GHZ"), "{out}");
}

#[test]
fn classify_document_on_one_row_pair() {
    // the appendix state xi with a = 1
    let entries: Vec<String> = [(0, "1/2"), (3, "1/2"), (12, "1/2"), (15, "1/2"), (1, "i"), (13, "-i"), (10, "1")]
        .iter()
        .map(|(i, v)| format!(r#"{{"index": {i}, "value": "{v}"}}"#))
        .collect();
    let doc = format!(r#"{{"n": 4, "field": "exact", "amplitudes": [{}]}}"#, entries.join(", "));
    let path = scratch("xi.json", &doc);
    let o = slocc(&["classify", "--state", path.to_str().unwrap(), "--rows", "1,2"]);
    let out = stdout(&o);
    assert_eq!(code(&o), 0, "{out}{}", String::from_utf8_lossy(&o.stderr));
    assert!(out.contains("(1,2)"));
    assert!(!out.contains("(1,3)"));
}

#[test]
fn compare_zeta4_zeta5_is_inequivalent() {
    for mode in ["exact", "float"] {
        let o = slocc(&["compare", "--a", "fixture:zeta4:a=2,b=3", "--b", "fixture:zeta5:a=2,b=3", "--mode", mode]);
        assert_eq!(code(&o), 2, "{mode}");
        let out = stdout(&o);
        assert!(out.contains("INEQUIVALENT"), "{out}");
        assert!(out.contains("(1,2)"), "{out}");
    }
}

#[test]
fn compare_equivalent_pair_is_not_distinguished() {
    let o = slocc(&["compare", "--a", "fixture:L_a4:a=2", "--b", "fixture:L_a4:a=1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("NOT_DISTINGUISHED"));
}

#[test]
fn verify_passes_and_is_reproducible() {
    let args = ["verify", "--state", "fixture:theta1", "--trials", "5", "--seed", "9"];
    let a = slocc(&args);
    let b = slocc(&args);
    assert_eq!(code(&a), 0);
    assert!(stdout(&a).contains("5/5 pass"), "{}", stdout(&a));
    assert_eq!(stdout(&a), stdout(&b));
    let sl = slocc(&["verify", "--state", "fixture:w", "--trials", "3", "--sl2", "--sequential"]);
    assert_eq!(code(&sl), 0);
}

#[test]
fn tables_reproduce() {
    for t in ["1", "2", "4"] {
        let o = slocc(&["tables", "--table", t]);
        assert_eq!(code(&o), 0, "table {t}: {}", stdout(&o));
        assert!(!stdout(&o).contains("MISMATCH"));
    }
}

#[test]
fn fixture_document_round_trips_through_classify() {
    let o = slocc(&["fixture", "zeta4", "--param", "a=2", "--param", "b=3"]);
    assert_eq!(code(&o), 0);
    let path = scratch("zeta4.json", &stdout(&o));
    let o = slocc(&["classify", "--state", path.to_str().unwrap(), "--rows", "1,2"]);
    assert!(stdout(&o).contains("J2(9) 4 4"), "{}", stdout(&o));
    let list = slocc(&["fixture", "--list"]);
    assert!(stdout(&list).contains("zeta4"));
}

#[test]
fn input_errors_exit_four() {
    assert_eq!(code(&slocc(&["classify", "--state", "/nonexistent/state.json"])), 4);
    assert_eq!(code(&slocc(&["compare", "--a", "fixture:ghz", "--b", "fixture:bell"])), 4);
    assert_eq!(code(&slocc(&["classify", "--state", "fixture:no_such_state"])), 4);
    assert_eq!(code(&slocc(&["classify", "--state", "fixture:ghz", "--rows", "1,9"])), 4);
    assert_eq!(code(&slocc(&["verify", "--state", "fixture:ghz", "--trials", "0"])), 4);
    let bad = scratch("short.json", r#"{"n": 3, "field": "exact", "amplitudes": ["1", "0", "0", "0", "0", "0", "0"]}"#);
    assert_eq!(code(&slocc(&["classify", "--state", bad.to_str().unwrap()])), 4);
    let float = scratch("float.json", r#"{"n": 2, "field": "float", "amplitudes": [[1, 0], [0, 0], [0, 0], [1, 0]]}"#);
    assert_eq!(code(&slocc(&["classify", "--state", float.to_str().unwrap(), "--mode", "exact"])), 4);
    assert_eq!(code(&slocc(&["classify", "--state", float.to_str().unwrap(), "--mode", "float"])), 0);
}
