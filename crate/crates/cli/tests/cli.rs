use std::path::PathBuf;
use std::process::Command;

use gpdcoh_cli::corpus::invoke;
use gpdcoh_cli::exit;
use serde_json::Value;

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn report(args: &[&str]) -> (Value, i32) {
    let out = invoke(&corpus(), args, None);
    assert!(out.stderr.is_empty(), "{}", out.stderr);
    (serde_json::from_str(&out.stdout).unwrap(), out.code)
}

#[test]
fn pair3_table() {
    let (r, code) = report(&["cohomology", "pair3.json", "--max-degree", "5"]);
    assert_eq!(code, exit::PASS);
    assert_eq!(r["configuration"]["trusted_through"], 3);
    assert_eq!(r["results"][0]["trusted"], serde_json::json!([1, 0, 0, 0]));
}

#[test]
fn fshriek_with_sign_passes() {
    let (r, code) = report(&["morita", "fshriek_bz2.json", "--coefficients", "sign.json"]);
    assert_eq!(code, exit::PASS);
    let v = &r["results"][0];
    assert_eq!(v["pass"], true);
    assert_eq!(v["mode"], "representation");
    assert_eq!(v["target_cohomology"], serde_json::json!([0, 0, 0]));
}

#[test]
fn s3_axioms_pass() {
    let (r, code) = report(&["axioms", "delooping_s3.json", "--max-degree", "3"]);
    assert_eq!(code, exit::PASS);
    assert_eq!(r["pass"], true);
}

#[test]
fn budget_exit_and_env_override() {
    let args = ["cohomology", "pair4.json", "--level-budget", "10"];
    assert_eq!(invoke(&corpus(), &args, None).code, exit::BUDGET);
    assert_eq!(invoke(&corpus(), &args, Some("100000".into())).code, exit::PASS);
    let out = invoke(&corpus(), &["cohomology", "pair4.json"], Some("10".into()));
    assert_eq!(out.code, exit::BUDGET);
    assert!(out.stderr.contains("budget"), "{}", out.stderr);
    assert_eq!(
        invoke(&corpus(), &["cohomology", "pair4.json"], Some("lots".into())).code,
        exit::INPUT
    );
}

#[test]
fn input_errors() {
    let c = |args: &[&str]| invoke(&corpus(), args, None);
    assert_eq!(c(&["frobnicate", "pair2.json"]).code, exit::INPUT);
    assert_eq!(c(&["cohomology", "missing.json"]).code, exit::INPUT);
    // sign.json refers to a groupoid declared elsewhere
    let out = c(&["cohomology", "sign.json"]);
    assert_eq!(out.code, exit::INPUT);
    assert!(out.stderr.contains("unknown reference"), "{}", out.stderr);
    assert_eq!(c(&["morita", "fshriek_bz2.json", "--format", "tsv"]).code, exit::INPUT);
    assert_eq!(
        c(&["morita", "fshriek_bz2.json", "--max-degree", "2"]).code,
        exit::INPUT
    );
    // coefficients that live on no homomorphism target
    let out = c(&[
        "morita",
        "point_pair2.json",
        "--coefficients",
        "sign_s3.json",
        "delooping_s3.json",
    ]);
    assert_eq!(out.code, exit::INPUT, "{}", out.stdout);
}

#[test]
fn malformed_files() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"kind\": \"groupoid\",\n  \"id\": \"x\",\n  oops\n}").unwrap();
    let out = gpdcoh_cli::run(["gpd", "check", bad.to_str().unwrap()], None);
    assert_eq!(out.code, exit::INPUT);
    assert!(out.stderr.contains("line 4"), "{}", out.stderr);

    let rep = dir.path().join("rep.json");
    std::fs::write(
        &rep,
        r#"{"kind":"representation","id":"r","groupoid":"bz2","fibers":{"*":1},"matrices":{"g0":[["1"]],"g1":[["1/0"]]}}"#,
    )
    .unwrap();
    let z2 = corpus().join("delooping_z2.json");
    let out = gpdcoh_cli::run(["gpd", "check", z2.to_str().unwrap(), rep.to_str().unwrap()], None);
    assert_eq!(out.code, exit::INPUT);
    assert!(out.stderr.contains("malformed rational `1/0`"), "{}", out.stderr);
}

#[test]
fn corrupted_composition_fails_check() {
    let (r, code) = report(&["check", "pair2_corrupt.json", "delooping_z3_corrupt.json"]);
    assert_eq!(code, exit::FAILED);
    for entry in r["results"].as_array().unwrap() {
        assert_eq!(entry["status"], "invalid");
        assert!(entry["witness"].as_str().unwrap().contains(" fails at "));
    }
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_gpd");
    let status = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .current_dir(corpus())
            .env_remove("GPD_LEVEL_BUDGET")
            .output()
            .unwrap()
    };
    let ok = status(&["cohomology", "pair2.json", "--format", "tsv"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("groupoid\tcoefficients\tdegree"));
    assert_eq!(
        status(&["morita", "bz2_point.json", "--max-degree", "3"]).status.code(),
        Some(1)
    );
    assert_eq!(status(&["check", "nowhere.json"]).status.code(), Some(2));
    assert_eq!(
        status(&["cohomology", "pair4.json", "--level-budget", "5"])
            .status
            .code(),
        Some(3)
    );
}
