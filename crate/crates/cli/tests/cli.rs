use std::path::Path;
use std::process::{Command, Output};

fn bratteli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bratteli"))
        .args(args)
        .env_remove("BRATTELI_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = bratteli(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn code(args: &[&str]) -> i32 {
    bratteli(args).status.code().unwrap()
}

#[test]
fn algebra_dims_per_family() {
    let walled = stdout(&["algebra-dims", "--family", "walled_young", "--max-level", "6"]);
    let sums: Vec<&str> = walled.lines().map(|l| l.split(' ').nth(1).unwrap()).collect();
    assert_eq!(sums, ["1", "1", "2", "6", "24", "120", "720"]);

    let doubled = stdout(&["algebra-dims", "--family", "doubled_young", "--max-level", "5"]);
    let sums: Vec<&str> = doubled.lines().map(|l| l.split(' ').nth(1).unwrap()).collect();
    assert_eq!(sums, ["1", "1", "2", "5", "15", "52"]);
}

#[test]
fn json_reports_parse() {
    let text = stdout(&["ratios", "--family", "young", "--horizon", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["verdict"], "vanishes");
    assert_eq!(v["rows"].as_array().unwrap().len(), 7);
    assert_eq!(v["rows"][1]["numerator"], "1");
    assert_eq!(v["rows"][1]["denominator"], "3");
}

#[test]
fn dot_output() {
    let dot = stdout(&["pascalize", "--family", "chain", "--max-level", "3", "--format", "dot"]);
    assert!(dot.starts_with("digraph pascalized_chain {"));
    assert!(dot.trim_end().ends_with('}'));
    assert_eq!(dot.matches("->").count(), 1 + 2 + 3);
}

#[test]
fn loaded_graph() {
    let dims = stdout(&["dims", "--input", &data("diamond.json")]);
    assert!(dims.contains("2\t\"t\"\t2"), "{dims}");
    let cone = stdout(&["dims", "--input", &data("diamond.json"), "--source", "\"a\""]);
    assert!(cone.contains("# source: \"a\""));
    assert_eq!(cone.lines().count(), 5);
}

#[test]
fn malformed_graph_is_rejected() {
    let out = bratteli(&["graph", "--input", &data("skip.json")]);
    assert_eq!(out.status.code(), Some(6));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("grading"), "{err}");
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn exit_codes_are_distinct() {
    assert_eq!(code(&["dims", "--family", "nope"]), 3);
    assert_eq!(code(&["decay", "--family", "young", "--target", "[2,[5]]"]), 4);
    assert_eq!(code(&["decay", "--family", "young", "--target", "not json"]), 4);
    assert_eq!(code(&["decay", "--family", "young", "--target", "[2,[1,1]]"]), 4);
    assert_eq!(code(&["estimate", "--family", "young", "--max-level", "6", "--horizon", "9", "--target", "[1]"]), 5);
    assert_eq!(code(&["ratios", "--family", "young", "--horizon", "2"]), 6);
    assert_eq!(code(&["ratios"]), 2);
    assert_eq!(code(&["graph", "--input", "/no/such/file.json"]), 7);
}

#[test]
fn diagnostics_are_one_line() {
    for args in [
        &["dims", "--family", "nope"][..],
        &["decay", "--family", "young", "--target", "[2,[5]]"][..],
        &["decay", "--family", "young", "--horizon", "30"][..],
    ] {
        let out = bratteli(args);
        assert!(out.stdout.is_empty());
        assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1, "{args:?}");
    }
}

#[test]
fn supplied_path() {
    let path = "[[],[1],[2],[2,1]]";
    let text = stdout(&["estimate", "--family", "young", "--max-level", "3", "--target", "[1]", "--path", path]);
    assert!(text.contains("# path: supplied"));
    assert!(!text.contains("seed"));
    let last = text.lines().last().unwrap();
    assert_eq!(last, "3\t1\t1\t1.00000000000");

    let broken = "[[],[1],[1,1],[3]]";
    assert_eq!(code(&["estimate", "--family", "young", "--max-level", "3", "--target", "[1]", "--path", broken]), 4);
}

#[test]
fn pascalized_estimate_defaults_to_two_root() {
    let text = stdout(&["estimate", "--family", "young", "--pascalized", "--max-level", "10"]);
    assert!(text.contains("# target: [2,[]]"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 1 + 9);
}

#[test]
fn failing_check_exits_one() {
    let out = bratteli(&["harmonic", "--input", &data("diamond.json"), "--max-level", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = bratteli(&["harmonic", "--family", "chain", "--max-level", "4"]);
    assert_eq!(out.status.code(), Some(0));
    // dim(v)/Σdim² on Π(chain) is not harmonic
    let pg = stdout(&["graph", "--family", "chain", "--pascalized", "--max-level", "4"]);
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("pchain.json");
    std::fs::write(&file, pg).unwrap();
    let out = bratteli(&["harmonic", "--input", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("# result: "));
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let run = |extra: &[&str]| {
        let status = Command::new(env!("CARGO_BIN_EXE_bratteli"))
            .args(["mtable", "--family", "young", "--max-level", "4"])
            .args(extra)
            .env("BRATTELI_OUT_DIR", dir.path())
            .status()
            .unwrap();
        assert!(status.success());
    };
    run(&[]);
    let default = dir.path().join("mtable_young.tsv");
    assert!(std::fs::read_to_string(&default).unwrap().starts_with("level\tl\tvalue\n"));
    run(&["--output", "nested/m.tsv"]);
    assert!(dir.path().join("nested/m.tsv").exists());
}
