use std::fs;
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_minuscone"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).env_remove("MINUSCONE_OUT_DIR").output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).expect("utf-8"))
}

#[test]
fn unknown_case_is_a_usage_error() {
    assert_eq!(run(&["verify", "--case", "b2"]).0, 2);
    assert_eq!(run(&["verify", "--bogus"]).0, 2);
    assert_eq!(run(&["delpezzo", "--r", "8", "--graph"]).0, 2);
    assert_eq!(run(&["polytope", "--case", "e6"]).0, 2);
}

#[test]
fn forms_suite_passes() {
    let (code, stdout) = run(&["verify", "--case", "e6", "--suite", "forms", "--quiet", "--json", "-"]);
    assert_eq!(code, 0);
    let reports: Value = serde_json::from_str(&stdout).unwrap();
    let ranks = reports.as_array().unwrap().iter().find(|r| r["check_name"] == "form-ranks").unwrap();
    assert_eq!(ranks["status"], "pass");
    assert!(ranks["details"]["ranks"].as_array().unwrap().iter().all(|r| r == 8));
}

#[test]
fn reports_are_reproducible_and_match_the_schema() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let (code, _) = run(&[
            "verify",
            "--case",
            "a4",
            "--suite",
            "all",
            "--seed",
            "7",
            "--quiet",
            "--json",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
    }
    let (ra, rb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ra, rb);

    let schema: Value = serde_json::from_str(include_str!("../../../schemas/check_report.schema.json")).unwrap();
    let item = &schema["items"];
    let required: Vec<&str> = item["required"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    let allowed: Vec<&String> = item["properties"].as_object().unwrap().keys().collect();
    let statuses = item["properties"]["status"]["enum"].as_array().unwrap();
    let reports: Value = serde_json::from_slice(&ra).unwrap();
    for r in reports.as_array().unwrap() {
        let obj = r.as_object().unwrap();
        assert!(required.iter().all(|k| obj.contains_key(*k)));
        assert!(obj.keys().all(|k| allowed.contains(&k)));
        assert!(statuses.contains(&r["status"]));
        assert!(r["details"].is_object());
    }
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["verify", "--case", "a4", "--suite", "rep", "--quiet"])
        .env("MINUSCONE_OUT_DIR", dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    assert!(dir.path().join("report-a4-rep.json").exists());
}

#[test]
fn unwritable_output_fails() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain");
    fs::write(&file, "x").unwrap();
    let target = file.join("report.json");
    let (code, _) = run(&["verify", "--case", "a4", "--suite", "rep", "--quiet", "--json", target.to_str().unwrap()]);
    assert_eq!(code, 1);
}

#[test]
fn equations_line_counts() {
    let (code, text) = run(&["equations", "--case", "a4", "--format", "text"]);
    assert_eq!(code, 0);
    assert_eq!(text.lines().count(), 3);
    let (_, text) = run(&["equations", "--case", "d5"]);
    assert_eq!(text.lines().count(), 5);
    let (_, text) = run(&["equations", "--case", "e7"]);
    assert_eq!(text.lines().filter(|l| l.starts_with("p[")).count(), 27);
    assert_eq!(text.lines().filter(|l| l.starts_with("q[")).count(), 1);
    let (_, json) = run(&["equations", "--case", "e7", "--format", "json"]);
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["q_coeffs"].as_array().unwrap().len(), 45);
}

#[test]
fn polytope_edges_and_removals() {
    let (code, out) = run(&["polytope", "--case", "e6", "--edges"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["edges"].as_array().unwrap().len(), 27 * 16 / 2);
    let (_, out) = run(&["polytope", "--case", "e6", "--removals", "pairs"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["all_stable"], true);
    assert_eq!(v["non_adjacent_pairs"], 27 * 10 / 2);
}

#[test]
fn delpezzo_lists() {
    for (kind, n) in [("exceptional", 56), ("conic", 126), ("roots", 126)] {
        let (code, out) = run(&["delpezzo", "--r", "7", "--list", kind]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v.as_array().unwrap().len(), n, "{kind}");
    }
    let (_, out) = run(&["delpezzo", "--r", "7", "--graph"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let vertices = v["vertices"].as_array().unwrap();
    assert_eq!(vertices.len(), 56);
    assert!(vertices.iter().all(|x| x["neighbors"].as_array().unwrap().len() == 27 + 1));
}
