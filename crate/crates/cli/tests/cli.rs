use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn qhopf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhopf")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn build_families() {
    let o = qhopf(&["build", "--family", "hps", "--p", "3", "--s", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["dim"], 3);

    let o = qhopf(&["build", "--family", "aq", "--p", "3", "--q-exp", "1"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["dim"], 27);
    assert_eq!(v["provenance"]["family"], "aq");

    let o = qhopf(&["build", "--family", "twist-A", "--datum", p(&fixture("sl2_n3.json"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["dim"], 27);
}

#[test]
fn build_rejects_bad_input() {
    assert_eq!(code(&qhopf(&["build", "--family", "hps", "--p", "4", "--s", "1"])), 2);
    assert_eq!(code(&qhopf(&["build", "--family", "aq", "--p", "3", "--q-exp", "3"])), 2);
    assert_eq!(code(&qhopf(&["build", "--family", "hps", "--p", "3"])), 2);
    assert_eq!(code(&qhopf(&["build", "--family", "nope"])), 2);
}

#[test]
fn verify_exit_codes() {
    let o = qhopf(&["verify", p(&fixture("hps_3_1.json"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["status"], "pass");

    let dir = tempfile::tempdir().unwrap();
    let mut f: Value = serde_json::from_str(&fs::read_to_string(fixture("hps_3_1.json")).unwrap()).unwrap();
    // a·a² = 2·1 breaks the coproduct being multiplicative.
    for sc in f["struct_consts"].as_array_mut().unwrap() {
        if sc[0] == 1 && sc[1] == 2 {
            sc[3]["coeffs"][0][0] = 2.into();
        }
    }
    let bad = dir.path().join("bad.json");
    fs::write(&bad, serde_json::to_string(&f).unwrap()).unwrap();
    let o = qhopf(&["verify", p(&bad)]);
    assert_eq!(code(&o), 1);
    let report = stdout_json(&o);
    assert_eq!(report["status"], "fail");
    let failed: Vec<&Value> = report["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| c["witness"].is_string()));

    let garbage = dir.path().join("garbage.json");
    fs::write(&garbage, "{\"format_version\": 1,").unwrap();
    assert_eq!(code(&qhopf(&["verify", p(&garbage)])), 2);
    assert_eq!(code(&qhopf(&["verify", p(&dir.path().join("absent.json"))])), 2);
    assert_eq!(code(&qhopf(&["verify", p(&fixture("hps_3_1.json")), "--axioms", "frobnicate"])), 2);
}

#[test]
fn verify_selected_axioms_and_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = qhopf(&["verify", p(&fixture("hps_3_1.json")), "--axioms", "pentagon,antipode", "-r", p(&out)]);
    assert_eq!(code(&o), 0);
    let r: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["pentagon", "antipode"]);
    assert_eq!(r["tool_version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn output_is_deterministic() {
    let strip = |mut v: Value| {
        for c in v["checks"].as_array_mut().unwrap() {
            c["timing_ms"] = 0.into();
        }
        v
    };
    let a = strip(stdout_json(&qhopf(&["verify", p(&fixture("hps_3_1.json"))])));
    let b = strip(stdout_json(&qhopf(&["verify", p(&fixture("hps_3_1.json"))])));
    assert_eq!(a, b);
    let x = qhopf(&["build", "--family", "aq", "--p", "3", "--q-exp", "2"]);
    let y = qhopf(&["build", "--family", "aq", "--p", "3", "--q-exp", "2"]);
    assert_eq!(x.stdout, y.stdout);
}

#[test]
fn cocycle_triviality() {
    let o = qhopf(&["cocycle", p(&fixture("hps_3_1.json")), "triviality"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("non-trivial"));
    assert_eq!(stdout_json(&o)["result"], "nontrivial");

    let o = qhopf(&["cocycle", p(&fixture("trivial_3.json")), "triviality"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["result"], "trivial");
    assert!(v["witness"].is_object());

    let o = qhopf(&["cocycle", p(&fixture("hps_3_1.json")), "check"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["cocycle"]["orders"], serde_json::json!([3]));
}

#[test]
fn cocycle_needs_a_diagonal_associator() {
    let dir = tempfile::tempdir().unwrap();
    let mut f: Value = serde_json::from_str(&fs::read_to_string(fixture("hps_3_1.json")).unwrap()).unwrap();
    f.as_object_mut().unwrap().remove("group_part");
    let path = dir.path().join("plain.json");
    fs::write(&path, serde_json::to_string(&f).unwrap()).unwrap();
    assert_eq!(code(&qhopf(&["cocycle", p(&path), "triviality"])), 2);
}

#[test]
fn cocycle_restrict() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let o = qhopf(&["build", "--family", "twist-A", "--datum", p(&fixture("sl2_n3.json")), "-o", p(&a)]);
    assert_eq!(code(&o), 0);
    let o = qhopf(&["cocycle", p(&a), "restrict", "--axis", "0"]);
    assert_eq!(code(&o), 0);
    let w = stdout_json(&o);
    assert_eq!(w["orders"], serde_json::json!([3]));
    let restricted = dir.path().join("w.json");
    fs::write(&restricted, &o.stdout).unwrap();
    let w: qhopf::cohomology::Cocycle3 = serde_json::from_str(&fs::read_to_string(&restricted).unwrap()).unwrap();
    assert!(!qhopf::cohomology::is_coboundary(&w).unwrap().is_trivial());
    assert_eq!(code(&qhopf(&["cocycle", p(&a), "restrict", "--axis", "1"])), 2);
    assert_eq!(code(&qhopf(&["cocycle", p(&a), "restrict"])), 2);
}

#[test]
fn twist_writes_algebra_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let (a, r) = (dir.path().join("a.json"), dir.path().join("r.json"));
    let o = qhopf(&["twist", "--datum", p(&fixture("sl2_n3.json")), "-o", p(&a), "--report", p(&r)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report: Value = serde_json::from_str(&fs::read_to_string(&r).unwrap()).unwrap();
    assert_eq!(report["report"]["status"], "pass");
    assert_eq!(report["certificate"]["non_trivial"], true);
    let names: Vec<&str> = report["report"]["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"coproduct_closure") && names.contains(&"associator_closed_form"));
    assert_eq!(code(&qhopf(&["verify", p(&a)])), 0);
}

#[test]
fn classify_table() {
    let o = qhopf(&["classify"]);
    assert_eq!(code(&o), 0);
    let t = stdout_json(&o);
    assert_eq!(t["p3_contradiction"], "pass");
    assert_eq!(t["product_is_4"]["7"], "pass");
    assert_eq!(t["orbits_match_qr"]["5"], true);
    assert_eq!(t["hps_classes"]["5"][3]["class"], "Plus");
    let types: Vec<&str> = t["finite_types"].as_array().unwrap().iter().map(|r| r["finite_type"].as_str().unwrap()).collect();
    assert_eq!(types, ["A1xA1", "A2", "B2", "G2", "NotFiniteType", "NotFiniteType"]);
    assert_eq!(t["aq_eigenspaces"]["1"].as_object().unwrap().len(), 1);
}

#[test]
fn repro_filter_and_missing_fixture() {
    let o = qhopf(&["repro", "--only", "lemma42"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("lemma42"));
    assert!(text.contains("1 of 1 steps passed"));
    assert_eq!(code(&qhopf(&["repro", "--only", "no-such-step"])), 2);

    let dir = tempfile::tempdir().unwrap();
    for name in ["sl2_n3.json", "hps_3_1.json"] {
        fs::copy(fixture(name), dir.path().join(name)).unwrap();
    }
    assert_eq!(code(&qhopf(&["repro", "--fixtures", p(dir.path())])), 2);
}

#[test]
fn repro_full_suite() {
    let o = qhopf(&["repro"]);
    let text = String::from_utf8_lossy(&o.stdout);
    assert_eq!(code(&o), 0, "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 13);
}
