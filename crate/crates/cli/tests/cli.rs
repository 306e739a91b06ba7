use std::process::{Command, Output};

use serde_json::Value;

fn formalab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_formalab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn catalog_list_mentions_core_groups() {
    let out = formalab(&["catalog", "list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text
        .lines()
        .any(|l| l.starts_with("S4 ") && l.contains("24")));
    assert!(text.contains("SL(2,3)"));
    let json = stdout_json(&formalab(&["catalog", "list", "--json"]));
    assert!(json.as_array().unwrap().len() >= 60);
}

#[test]
fn analyze_s4_text_and_json() {
    let out = formalab(&["analyze", "S4", "--formation", "sup", "--pi", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("F-maximal subgroups: 7"), "{text}");
    let a = stdout_json(&formalab(&[
        "analyze",
        "S4",
        "--formation",
        "sup",
        "--pi",
        "3",
        "--json",
    ]));
    assert_eq!(a["z_pi_f"]["order"], 24);
    assert_eq!(a["int_f"]["order"], 1);
    assert_eq!(a["f_maximal"].as_array().unwrap().len(), 7);
}

#[test]
fn analyze_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    std::fs::write(
        &path,
        r#"{"name": "S3xC4b", "kind": "direct", "factors": ["S3", "C4"]}"#,
    )
    .unwrap();
    let a = stdout_json(&formalab(&["analyze", path.to_str().unwrap(), "--json"]));
    assert_eq!(a["group"], "S3xC4b");
    assert_eq!(a["order"], 24);
    assert_eq!(a["int_f"]["order"], 4);
}

#[test]
fn load_errors_exit_2() {
    assert_eq!(formalab(&["analyze", "NoSuchGroup"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"name": "X", "kind": "permutation", "degree": 3, "generators": ["(1 4)"]}"#,
    )
    .unwrap();
    assert_eq!(
        formalab(&["analyze", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
    std::fs::write(&path, "not json").unwrap();
    assert_eq!(
        formalab(&["lattice", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn cap_errors_exit_3() {
    let out = formalab(&["lattice", "S4", "--cap", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn lattice_dump() {
    let v = stdout_json(&formalab(&["lattice", "S3"]));
    let subs = v["subgroups"].as_array().unwrap();
    assert_eq!(subs.len(), 6);
    assert!(subs
        .iter()
        .all(|s| s.as_str().unwrap().chars().all(|c| c.is_ascii_hexdigit())));
}

#[test]
fn verify_reports_are_json_lines() {
    let out = formalab(&["verify", "baer", "--max-order", "30"]);
    assert!(out.status.success());
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["suite"], "baer");
    assert_eq!(r["passed"], true);
    assert!(r["failures"].as_array().unwrap().is_empty());
    assert!(r["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .all(|v| v["order"].as_u64().unwrap() <= 30));
}

#[test]
fn exploratory_failure_does_not_fail_the_run() {
    let out = formalab(&[
        "verify",
        "hypercentre",
        "--formation",
        "sup",
        "--pi",
        "3",
        "--max-order",
        "24",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["label"], "exploratory");
    assert!(r["failures"]
        .as_array()
        .unwrap()
        .iter()
        .any(|f| f["group"] == "S4"));
}

#[test]
fn boundary_label_follows_prime_set() {
    // A4 is a witness for pNilp(2) at p = 3, which is only an exploratory scan.
    let out = formalab(&[
        "verify",
        "boundary",
        "--formation",
        "pnilp:2",
        "--pi",
        "all",
        "--max-order",
        "12",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        (r["label"].as_str(), r["passed"].as_bool()),
        (Some("exploratory"), Some(false))
    );
    let out = formalab(&["verify", "boundary", "--formation", "pnilp:2", "--pi", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        (r["label"].as_str(), r["passed"].as_bool()),
        (Some("certified"), Some(true))
    );
}

#[test]
fn hunt_critical_sup_at_three() {
    let v = stdout_json(&formalab(&[
        "hunt-critical",
        "--formation",
        "sup",
        "--p",
        "3",
        "--soluble-only",
    ]));
    let names: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w["group"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"A4"), "{names:?}");
    let none = stdout_json(&formalab(&[
        "hunt-critical",
        "--formation",
        "nil",
        "--p",
        "2",
    ]));
    assert!(none.as_array().unwrap().is_empty());
    assert_ne!(
        formalab(&["hunt-critical", "--formation", "syltower", "--p", "2"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn deterministic_verify_output() {
    let strip = |o: Output| -> Value {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("wall_clock_ms");
        v
    };
    let a = strip(formalab(&["verify", "int-star", "--max-order", "48"]));
    let b = strip(formalab(&["verify", "int-star", "--max-order", "48"]));
    assert_eq!(a, b);
}
