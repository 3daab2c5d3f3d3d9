use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

const PARITY: &str = "2 3\n0 0 0\n0 1 1\n1 0 1\n1 1 0\n";

fn oakit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oakit")).args(args).env_remove("OAKIT_CEILING").output().unwrap()
}

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn verify_parity_array() {
    let f = file(PARITY);
    let o = oakit(&["verify", path(&f), "--strength", "2"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("#REPORT v1\n"));
    assert!(out.contains("\nlambda 1\n"));
    assert!(out.contains("\nmax-multiplicity 1\n"));
    assert!(out.contains("BOUND repeated-row-min-lambda MIN 1 1 1 TIGHT"));
}

#[test]
fn verify_reports_the_unbalanced_pair() {
    let f = file("2 3\n0 0 0\n0 1 1\n1 0 1\n1 1 1\n");
    let o = oakit(&["verify", path(&f)]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("result NOT-AN-OA"));
    assert!(out.contains("\ncolumns 0,2\n"), "{out}");
}

#[test]
fn malformed_files_are_usage_errors() {
    for text in ["3 2\n0 3\n", "", "2 2\n0 1 0\n", "2 x\n"] {
        let f = file(text);
        assert_eq!(code(&oakit(&["verify", path(&f)])), 2, "{text:?}");
    }
    assert_eq!(code(&oakit(&["verify", "/nonexistent/file"])), 2);
    assert_eq!(code(&oakit(&["frobnicate"])), 2);
}

#[test]
fn bounds_examples() {
    let o = oakit(&["bounds", "--t", "2", "--k", "5", "--n", "3", "--lambda", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("BOUND max-multiplicity MAX 27/11 2 "));

    let o = oakit(&["bounds", "--t", "3", "--k", "4", "--n", "2", "--m", "2"]);
    assert!(stdout(&o).contains("BOUND mukerjee-qian-wu-min-rows MIN 16 16 "));

    let o = oakit(&["bounds", "--design", "7,3,1,7,2,1,1"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<_> = stdout(&o).lines().filter(|l| l.starts_with("BOUND")).map(String::from).collect();
    assert_eq!(lines.len(), 4);
    assert!(lines.iter().all(|l| l.ends_with(" MIN 7 7 7 TIGHT")));
}

#[test]
fn bounds_reject_inconsistent_flags() {
    assert_eq!(code(&oakit(&["bounds", "--t", "2", "--k", "5", "--n", "3", "--lambda", "1", "--m", "2"])), 2);
    assert_eq!(code(&oakit(&["bounds", "--t", "5", "--k", "4", "--n", "2"])), 2);
    assert_eq!(code(&oakit(&["bounds", "--k", "4", "--n", "2"])), 2);
    assert_eq!(code(&oakit(&["bounds", "--design", "7,3,1,7,2,1,1", "--n", "2"])), 2);
    assert_eq!(code(&oakit(&["bounds", "--design", "7,3,1"])), 2);
}

#[test]
fn violated_bounds_fail() {
    let o = oakit(&["bounds", "--t", "2", "--k", "4", "--n", "2", "--lambda", "2", "--m", "2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("VIOLATED"));
}

#[test]
fn audits() {
    let f = file(PARITY);
    let o = oakit(&["audit", path(&f), "--method", "gram"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\nIMPLIES 7<=7 TIGHT\n"));

    let stacked = file(&format!("{PARITY}0 0 0\n0 1 1\n1 0 1\n1 1 0\n"));
    let o = oakit(&["audit", path(&stacked), "--method", "variance", "--m", "2"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("\nequality-case true\n"));
    assert!(out.contains("\nabar 1\n"));
    assert!(out.contains("\nssd 0\n"));

    let bad = file("2 3\n0 0 0\n0 1 0\n1 0 1\n1 1 0\n");
    for method in ["variance", "td-rank", "gram", "roots", "shortened", "cwc"] {
        let o = oakit(&["audit", path(&bad), "--method", method]);
        assert_eq!(code(&o), 1, "{method}");
        assert!(stdout(&o).contains("result FAIL "), "{method}");
    }
    assert_eq!(code(&oakit(&["audit", path(&f), "--method", "nope"])), 2);
}

#[test]
fn search_examples_and_round_trip() {
    let o = oakit(&["search", "--n", "2", "--k", "4", "--lambda", "2", "--m", "2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("# status exhausted-no-solution"));

    let o = oakit(&["search", "--n", "2", "--k", "3", "--lambda", "2", "--m", "2"]);
    assert_eq!(code(&o), 0);
    let witness = file(&stdout(&o));
    let v = oakit(&["verify", path(&witness)]);
    assert_eq!(code(&v), 0);
    assert!(stdout(&v).contains("\nmax-multiplicity 2\n"));
}

#[test]
fn maximize_finds_the_bound_floor() {
    let o = oakit(&["search", "--n", "3", "--k", "5", "--lambda", "3", "--maximize", "--workers", "2"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("# max-multiplicity 2\n"));
    assert!(out.contains("# bound-floor 2\n"));
    let witness = file(&out);
    assert_eq!(code(&oakit(&["verify", path(&witness)])), 0);
}

#[test]
fn search_output_is_independent_of_workers() {
    let args = ["search", "--n", "2", "--k", "6", "--lambda", "3"];
    let base = stdout(&oakit(&args));
    for w in ["1", "2", "3", "8"] {
        let o = oakit(&[&args[..], &["--workers", w]].concat());
        assert_eq!(stdout(&o), base, "workers {w}");
    }
}

#[test]
fn budget_and_ceiling() {
    let o = oakit(&["search", "--n", "3", "--k", "5", "--lambda", "3", "--m", "2", "--budget", "100"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("# status budget-exceeded\n# nodes 100\n"));

    let o = oakit(&["search", "--n", "2", "--k", "3", "--lambda", "10"]);
    assert_eq!(code(&o), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_oakit"))
        .args(["search", "--n", "2", "--k", "3", "--lambda", "10"])
        .env("OAKIT_CEILING", "40")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let o = Command::new(env!("CARGO_BIN_EXE_oakit"))
        .args(["search", "--n", "2", "--k", "3", "--lambda", "1"])
        .env("OAKIT_CEILING", "lots")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_design_files() {
    let fano = file("7 3\n0 1 3\n1 2 4\n2 3 5\n3 4 6\n0 4 5\n1 5 6\n0 2 6\n");
    let o = oakit(&["verify-design", path(&fano)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("BOUND fisher MIN 7 7 7 TIGHT"));
    let broken = file("7 3\n0 1 3\n1 2 4\n2 3 5\n3 4 6\n0 4 5\n1 5 6\n0 2 5\n");
    assert_eq!(code(&oakit(&["verify-design", path(&broken)])), 1);
}

#[test]
fn reports_are_reproducible() {
    let f = file(PARITY);
    for args in [vec!["audit", path(&f), "--method", "td-rank"], vec!["verify", path(&f)]] {
        assert_eq!(oakit(&args).stdout, oakit(&args).stdout);
    }
}
