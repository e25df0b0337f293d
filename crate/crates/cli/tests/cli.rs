use std::process::Command;

use riordan_cli::{run_delannoy_with, run_with, ORDER_ENV};
use riordan_core::delannoy::{equivalence_classes, q_matrix, wn_generating_function};
use riordan_core::fixtures;
use riordan_core::palindromic::{check_report, construct, PalindromicParams};
use riordan_core::rational::{int, rat};
use riordan_core::riordan::{rows_to_csv, rows_to_strings, rows_to_table};
use riordan_core::{parse_series, RiordanMatrix};

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("riordan").chain(args.iter().copied());
    let code = run_with(argv, 16, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_dl(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("delannoy").chain(args.iter().copied());
    let code = run_delannoy_with(argv, 16, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn matrix(f: &str, g: &str, n: usize) -> RiordanMatrix {
    RiordanMatrix::from_t(parse_series(f, n).unwrap(), parse_series(g, n).unwrap(), n).unwrap()
}

#[test]
fn show_mirrors_library_formats() {
    let m = matrix("1", "1-x", 5);
    let strs = rows_to_strings(m.rows());
    let base = ["show", "--expr-f", "1", "--expr-g", "1-x", "--rows", "5"];
    assert_eq!(run(&base).1, rows_to_table(&strs));
    assert!(run(&base).1.ends_with("1  4  6  4  1\n"));
    let with = |fmt: &str| {
        let mut v = base.to_vec();
        v.extend(["--format", fmt]);
        run(&v).1
    };
    assert_eq!(with("csv"), rows_to_csv(&strs));
    assert_eq!(with("json"), format!("{}\n", m.to_json()));
}

#[test]
fn order_alias_and_coefficient_inputs() {
    let a = run(&["show", "--expr-f", "1", "--expr-g", "1-x", "--order", "4"]);
    let b = run(&["show", "--coeffs-f", "1,0,0,0", "--coeffs-g", "1,-1,0,0", "--rows", "4"]);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
}

#[test]
fn motivating_fixture() {
    let (code, out, _) = run(&["fixtures", "--name", "motivating-D", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().map(|l| l.trim_end_matches(',')).collect();
    assert_eq!(
        lines,
        ["-1", "-4,1", "-11,6,-1", "-26,23,-8,1", "-57,72,-39,10,-1", "-120,201,-150,59,-12,1"]
    );
}

#[test]
fn fixtures_verify_reports_every_fixture() {
    let (code, out, _) = run(&["fixtures", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), fixtures::FIXTURES.len());
    assert!(out.lines().all(|l| l.starts_with("pass ")));
    assert_eq!(run(&["fixtures", "--name", "nope"]).0, 2);
}

#[test]
fn symbolic_weight_both_entry_points() {
    let want = "a^4 + 4*a^2*b + b^2\n";
    assert_eq!(run_dl(&["weight", "--n", "2", "--m", "2", "--symbolic"]).1, want);
    assert_eq!(run(&["delannoy", "weight", "--n", "2", "--m", "2", "--symbolic"]).1, want);
    for ev in ["closed", "recursive", "classes"] {
        let out = run_dl(&["weight", "--n", "2", "--m", "2", "--a", "2", "--b", "3", "--evaluator", ev]).1;
        assert_eq!(out, "73\n");
    }
    assert_eq!(run_dl(&["weight", "--n", "9", "--m", "2", "--a", "1", "--b", "1", "--evaluator", "classes"]).0, 1);
}

#[test]
fn classes_json_matches_library() {
    let (_, out, _) = run_dl(&["classes", "--n", "3", "--m", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let classes = equivalence_classes(3, 2);
    assert_eq!(v["count"], classes.len());
    for (got, c) in v["classes"].as_array().unwrap().iter().zip(&classes) {
        assert_eq!(got, &c.to_json());
    }
}

#[test]
fn classes_list_words() {
    let (_, out, _) = run_dl(&["classes", "--n", "2", "--m", "2", "--list-words"]);
    let last = out.lines().last().unwrap();
    assert_eq!(last, "0\tVVHH\t6\tHHVV HVHV HVVH VHHV VHVH VVHH");
    assert_eq!(out.lines().count(), 7);
}

#[test]
fn qmatrix_and_gf_mirror_library() {
    let q = q_matrix(&int(1), &int(2), 7).unwrap();
    let (_, out, _) = run_dl(&["qmatrix", "--a", "1", "--b", "2", "--rows", "7"]);
    assert_eq!(out, rows_to_table(&rows_to_strings(&q)));
    assert!(out.ends_with("1  11  41  63  41  11   1\n"));
    let s = wn_generating_function(3, &int(2), &rat(-1, 3), 6);
    let (_, out, _) = run_dl(&["gf", "--n", "3", "--a", "2", "--b", "-1/3", "--rows", "6", "--format", "json"]);
    assert_eq!(out, format!("{}\n", s.to_json()));
    let (code, _, err) = run_dl(&["qmatrix", "--a", "0", "--b", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("--a"));
}

#[test]
fn palindromic_commands() {
    let p = PalindromicParams::new(int(1), int(1), int(-1)).unwrap();
    let m = construct(&p, 6).unwrap();
    let (_, out, _) = run(&["palindromic", "construct", "--f0", "1", "--g0", "1", "--f1", "-1", "--rows", "6"]);
    assert_eq!(out, rows_to_table(&rows_to_strings(m.rows())));
    let kim = run(&["palindromic", "construct", "--d0", "1", "--h1", "1", "--h2", "2", "--rows", "6"]);
    assert_eq!(kim.1, out);
    let cat = matrix("1", "(1+sqrt(1-4*x))/2", 6);
    let (_, out, _) = run(&["palindromic", "check", "--expr-f", "1", "--expr-g", "(1+sqrt(1-4*x))/2", "--rows", "6", "--format", "json"]);
    assert_eq!(out, format!("{}\n", check_report(&cat, 6).unwrap()));
    let classify = |f0: &str, g0: &str, f1: &str| {
        run(&["palindromic", "classify", "--f0", f0, "--g0", g0, "--f1", f1, "--rows", "8"]).1
    };
    assert_eq!(classify("1", "-1", "0"), "involution\n");
    assert_eq!(classify("-1", "1", "0"), "pseudo-involution\n");
    assert_eq!(classify("1", "1", "-1"), "neither\n");
    let (code, _, err) = run(&["palindromic", "classify", "--f0", "0", "--g0", "1", "--f1", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("--f0"));
}

#[test]
fn group_operations() {
    let (code, out, _) = run(&[
        "product", "--expr-f", "1", "--expr-g", "1-x", "--expr-l", "1", "--expr-m", "1-x", "--rows", "4",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, run(&["show", "--expr-f", "1", "--expr-g", "1-2*x", "--rows", "4"]).1);
    let inv = run(&["inverse", "--expr-f", "1", "--expr-g", "1-x", "--rows", "4"]).1;
    assert_eq!(inv, run(&["show", "--expr-f", "1", "--expr-g", "1+x", "--rows", "4"]).1);
    assert_eq!(run(&["aseq", "--expr-f", "1", "--expr-g", "1-x", "--rows", "3", "--format", "csv"]).1, "1,1,0\n");
    let applied = run(&["apply", "--expr-f", "1", "--expr-g", "1-x", "--expr-gamma", "1", "--rows", "4", "--format", "csv"]);
    assert_eq!(applied.1, "1,1,1,1\n");
}

#[test]
fn diag_modes() {
    let (_, out, _) = run(&["diag", "--expr-f", "1", "--expr-g", "1-x", "--rows", "3", "--cols", "4", "--format", "csv"]);
    assert_eq!(out, "1,1,1,1\n1,2,3,4\n1,3,6,10\n");
    let (_, biv, _) = run(&["diag", "--expr-f", "1", "--expr-g", "1-x", "--rows", "3", "--cols", "4", "--bivariate", "--format", "csv"]);
    assert_eq!(biv, "1,1,1,1\n1,2,3,4\n1,3,6,10\n");
    let (_, spr, _) = run(&["diag", "--expr-f", "1", "--expr-g", "1-x", "--rows", "3", "--cols", "3", "--sprugnoli", "--format", "csv"]);
    assert_eq!(spr, "1,0,0\n1,1,0\n1,2,1\n");
    assert_eq!(run(&["diag", "--expr-f", "1", "--expr-g", "1-x", "--bivariate", "--sprugnoli"]).0, 2);
}

#[test]
fn checks_pass() {
    let (code, out, _) = run(&["gk-check", "--expr-g", "1+x^3+2*x^5", "--k", "4", "--max-j", "6", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    let (code, _, err) = run(&["gk-check", "--expr-g", "1+x", "--k", "4"]);
    assert_eq!(code, 1);
    assert!(err.contains("--expr-g"));
    assert_eq!(run(&["qcones", "--m", "3", "--q", "2", "--rows", "8"]).0, 0);
    assert_eq!(run(&["qcones", "--m", "0", "--q", "2"]).0, 1);
}

#[test]
fn usage_and_domain_errors() {
    let (code, _, err) = run(&["show", "--expr-f", "1", "--coeffs-f", "1", "--expr-g", "1-x"]);
    assert_eq!(code, 2);
    assert!(err.contains("--coeffs-f"));
    let (code, _, err) = run(&["show", "--expr-f", "1/(1-x", "--expr-g", "1-x"]);
    assert_eq!(code, 2);
    assert!(err.contains("--expr-f") && err.contains("position 6"));
    let (code, _, err) = run(&["show", "--expr-f", "1", "--expr-g", "x"]);
    assert_eq!(code, 1);
    assert!(err.contains("--expr-g"));
    let (code, _, err) = run(&["show", "--expr-f", "1/x", "--expr-g", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("--expr-f"));
    let (code, _, err) = run(&["show", "--coeffs-f", "1,2", "--expr-g", "1-x", "--rows", "4"]);
    assert_eq!(code, 1);
    assert!(err.contains("--coeffs-f"));
    assert_eq!(run(&["nonsense"]).0, 2);
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn deterministic_output() {
    let args = ["delannoy", "paths", "--n", "4", "--m", "3", "--format", "json"];
    assert_eq!(run(&args), run(&args));
    let v: serde_json::Value = serde_json::from_str(&run(&args).1).unwrap();
    assert_eq!(v["count"], 129);
}

#[test]
fn binaries_read_order_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_riordan"))
        .args(["show", "--expr-f", "1", "--expr-g", "1-x"])
        .env(ORDER_ENV, "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1\n1  1\n1  2  1\n");
    let bad = Command::new(env!("CARGO_BIN_EXE_delannoy"))
        .args(["qmatrix", "--symbolic"])
        .env(ORDER_ENV, "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let ok = Command::new(env!("CARGO_BIN_EXE_delannoy"))
        .args(["weight", "--n", "2", "--m", "2", "--symbolic"])
        .env_remove(ORDER_ENV)
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "a^4 + 4*a^2*b + b^2\n");
}
