use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use hbl::report::Report;

fn hbl(args: &[&str]) -> Output {
    hbl_with_workers(args, "2")
}

fn hbl_with_workers(args: &[&str], workers: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hbl"))
        .args(args)
        .env("HBL_WORKERS", workers)
        .output()
        .expect("spawn hbl")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn canonical_verify(e: &str, seed: &str) -> String {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = hbl(&["verify", "--e", e, "--samples", "3", "--seed", seed, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = Report::from_json(&fs::read_to_string(&out).unwrap()).unwrap();
    r.canonical().to_json() + "\n"
}

fn check_golden(e: &str, seed: &str) {
    let path = golden(&format!("verify_e{e}_seed{seed}.json"));
    let got = canonical_verify(e, seed);
    if std::env::var_os("HBL_BLESS").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, &got).unwrap();
    }
    let want = fs::read_to_string(&path).expect("golden file; run with HBL_BLESS=1 to create");
    assert!(got == want, "report differs from {}", path.display());
}

#[test]
fn golden_report_e1_seed7() {
    check_golden("1", "7");
}

#[test]
fn golden_report_e2_seed7() {
    check_golden("2", "7");
}

#[test]
fn worker_count_does_not_change_reports() {
    let args = ["verify", "--e", "1..2", "--samples", "4", "--suite", "monads,prioritary,determinism"];
    let run = |w| {
        let o = hbl_with_workers(&args, w);
        assert_eq!(code(&o), 0);
        Report::from_json(&String::from_utf8(o.stdout).unwrap()).unwrap().canonical()
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn divisor_query_prints_value() {
    let o = hbl(&["cohomology", "--e", "1", "--divisor", "-2,-1", "--q", "1"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("h^1(O(-2,-1)) = 1"));
    let r = Report::from_json(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!(r.suites[0].data["values"][0]["value"], 1);

    let o = hbl(&["cohomology", "--e", "1", "--divisor", "1,0", "--q", "0"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("h^0(O(1,0)) = 1"));
}

#[test]
fn cohomology_grid_passes() {
    let o = hbl(&["cohomology", "--e", "0..4", "--range", "6"]);
    assert_eq!(code(&o), 0);
    let r = Report::from_json(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert!(r.pass());
    assert_eq!(r.summary.checks, 15);
}

#[test]
fn sample_files_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = hbl(&["sample", "--e", "1", "--prime", "10007", "--count", "20", "--seed", "42", "--out", out.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        fs::read(out).unwrap()
    };
    let a = run("a.json");
    assert_eq!(a, run("b.json"));
    let monads: Vec<serde_json::Value> = serde_json::from_slice(&a).unwrap();
    assert_eq!(monads.len(), 20);
    for m in &monads {
        let p = hbl::monad::AnyMonad::from_json_value(m).unwrap();
        assert_eq!(serde_json::to_string(&p.to_json_value()).unwrap(), serde_json::to_string(m).unwrap());
    }
}

#[test]
fn sample_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    let rep = dir.path().join("r.json");
    let o = hbl(&["sample", "--e", "2", "--count", "2", "--out", out.to_str().unwrap(), "--report", rep.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let r = Report::from_json(&fs::read_to_string(rep).unwrap()).unwrap();
    assert!(r.pass());
    assert_eq!(r.command, "sample");
}

#[test]
fn zero_twist_sampling_is_a_usage_error() {
    let o = hbl(&["sample", "--e", "0", "--count", "1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("e >= 1"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "--e", "1..9"][..],
        &["verify", "--suite", "nope"],
        &["verify", "--samples", "0"],
        &["cohomology", "--divisor", "1"],
        &["cohomology", "--q", "1"],
        &["dims", "--prime", "10"],
        &["dims", "--prime", "7", "--rational"],
        &["frobnicate"],
    ] {
        assert_eq!(code(&hbl(args)), 2, "{args:?}");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_hbl"))
        .args(["dims", "--e", "1"])
        .env("HBL_WORKERS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn unwritable_output_is_internal_error() {
    let o = hbl(&["dims", "--e", "1", "--out", "/nonexistent/dir/r.json"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn verify_suites_from_the_command_line() {
    let o = hbl(&["verify", "--suite", "dimensions", "--e", "1..8"]);
    assert_eq!(code(&o), 0);
    let o = hbl(&["verify", "--suite", "vanishings", "--e", "1..4", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("suite,check,expected,computed,pass"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 24);
    assert!(rows.iter().all(|r| r.starts_with("vanishings,") && r.ends_with(",0,0,true")));
}

#[test]
fn dims_report_lists_group_audit() {
    let o = hbl(&["dims", "--e", "2"]);
    assert_eq!(code(&o), 0);
    let r = Report::from_json(&String::from_utf8(o.stdout).unwrap()).unwrap();
    let g = &r.suites.iter().find(|s| s.name == "group-dimensions").unwrap().data["audits"][0];
    assert_eq!(g["dim_g_full"], 4 * 4 + 16 + 12);
    assert_eq!(g["dim_g_block_diagonal"], 2 * 4 + 8 + 12);
}
