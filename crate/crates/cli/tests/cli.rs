//! End-to-end checks of the binary: exit codes, output shape, determinism.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cone-certify"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn angle_exists_exit_zero() {
    let out = run(&["angle", "--dim", "12", "--alpha2", "10", "--model", "exp"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("8.7396"), "{text}");
}

#[test]
fn angle_no_vanishing_exit_one() {
    let out = run(&["angle", "--dim", "6", "--alpha2", "4", "--model", "F"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("no vanishing angle"));
}

#[test]
fn angle_exact_spectrum() {
    let out = run(&[
        "angle",
        "--dim",
        "6",
        "--spectrum",
        "1x2,-1x2,0x1",
        "--model",
        "exact",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("24.1685"));
}

#[test]
fn angle_missing_input_exit_two() {
    let out = run(&["angle", "--dim", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn certify_focal_inconclusive_exit_one() {
    let out = run(&[
        "certify", "focal", "--g", "4", "--m1", "1", "--m2", "1", "--side", "plus",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("Inconclusive"));
}

#[test]
fn certify_product_and_recheck_round_trip() {
    let dir = std::env::temp_dir().join("cone-certify-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("product-cert.json");
    let out = run(&[
        "certify",
        "product",
        "--factors",
        "g=4,m1=1,m2=2,side=minus; g=3,m=2",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["verify", "--recheck", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("recheck: OK"));
}

#[test]
fn bad_factor_grammar_exit_two() {
    let out = run(&["certify", "product", "--factors", "g=5,m=1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("g must be in"), "{err}");
}

#[test]
fn empty_factor_list_exit_two() {
    let out = run(&["certify", "product", "--factors", ""]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty factor list"));
}

#[test]
fn table_csv_deterministic_across_jobs() {
    let args = [
        "table", "--dims", "7:12", "--alpha2s", "1:8", "--format", "csv",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let mut with_jobs: Vec<&str> = args.to_vec();
    with_jobs.extend_from_slice(&["--jobs", "1"]);
    let c = run(&with_jobs);
    assert_eq!(a.stdout, c.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("alpha_sq,7,8,9,10,11,12\n"));
    // (12, 1) exists; every dim-7 cell above alpha^2 = 6 is starred.
    assert!(text.lines().nth(8).unwrap().contains("***"));
}

#[test]
fn classify_exceptions() {
    let out = run(&["classify", "--g", "2", "--m1", "1", "--m2", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("not minimizing"));
    let out = run(&["classify", "--g", "2", "--m1", "2", "--m2", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("(strictly)"));
}

#[test]
fn catalog_dump_is_json() {
    let out = run(&["catalog", "--max-sum", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["families"].as_array().unwrap().len() >= 5);
}

#[test]
fn verify_all_passes() {
    let out = run(&["verify", "--all"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("30 of 30 claims pass"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn trace_export() {
    let dir = std::env::temp_dir().join("cone-certify-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("trace.csv");
    let out = run(&[
        "angle",
        "--dim",
        "12",
        "--alpha2",
        "10",
        "--model",
        "exp",
        "--trace",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("t,h\n0,1\n"));
    assert!(csv.lines().count() > 100);
}

#[test]
fn tolerance_env_cannot_loosen() {
    let loose = bin()
        .args(["angle", "--dim", "12", "--alpha2", "10", "--model", "exp"])
        .env("CONE_CERTIFY_TOL", "1e-2")
        .output()
        .unwrap();
    let default = run(&["angle", "--dim", "12", "--alpha2", "10", "--model", "exp"]);
    assert_eq!(loose.stdout, default.stdout);
    let tight = bin()
        .args(["angle", "--dim", "12", "--alpha2", "10", "--model", "exp"])
        .env("CONE_CERTIFY_TOL", "1e-12")
        .output()
        .unwrap();
    assert_eq!(tight.status.code(), Some(0));
    // Tightening changes the angle by far less than the printed precision.
    assert_eq!(tight.stdout, default.stdout);
}
