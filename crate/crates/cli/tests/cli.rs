use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cuspcalc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.display().to_string()
}

#[test]
fn dual_text() {
    let o = run(&["dual", "5,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "4,2,2\n");
}

#[test]
fn torsion_json_exact() {
    let o = run(&["torsion", "5,2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"{"invariants":[6]}"#);
}

#[test]
fn domain_error_exit_two() {
    let o = run(&["dual", "2,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: AllTwos:"), "{}", stderr(&o));
    let o = run(&["torsion", "2,2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["quotient", "5,2", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("BadOrder"), "{}", stderr(&o));
}

#[test]
fn usage_error_exit_one_help_exit_zero() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["quotient", "5,2"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn negative_sequences_are_values() {
    let o = run(&["charge", "-1,-1,-1"]);
    assert_eq!(stdout(&o), "0\n");
    let o = run(&["toricmodel", "0,-2,0,2", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["script"], Value::Array(vec![]));
}

#[test]
fn json_outputs_roundtrip() {
    let o = run(&["dual", "9,6", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let dual: Vec<i64> = serde_json::from_value(v["dual"].clone()).unwrap();
    let back = run(&["dual", &dual.iter().map(i64::to_string).collect::<Vec<_>>().join(","), "--json"]);
    let w: Value = serde_json::from_str(&stdout(&back)).unwrap();
    let twice: Vec<i64> = serde_json::from_value(w["dual"].clone()).unwrap();
    let mut rot = twice.clone();
    rot.rotate_left(twice.iter().position(|&d| d == 9).unwrap());
    assert_eq!(rot, vec![9, 6]);

    let o = run(&["monodromy", "3,2,2,2,3,2^6", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["matrix"], serde_json::json!([[-34, -75], [39, 86]]));
    assert_eq!(v["trace"], 52);

    let o = run(&["nwcover", "9,6", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["trace"], 52);
    assert_eq!(v["cover_cycle"], serde_json::json!([52]));

    let o = run(&["enumerate", "8", "--max-len", "6", "--json"]);
    let v: Vec<Vec<i64>> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.len(), 4);

    let o = run(&["lci", "4,3,2,3,2,2,2", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["class"], "complete_intersection");
    assert_eq!(v["witness"]["type"], "Pi");
}

#[test]
fn lci_equation_modes() {
    assert_eq!(stdout(&run(&["lci", "--t", "2,4,7"])), "4,2,2\n");
    assert_eq!(stdout(&run(&["lci", "--pi", "3,3,3,3"])), "unknown\n");
    assert_eq!(run(&["lci", "--t", "3,3,3"]).status.code(), Some(2));
}

#[test]
fn quotient_chain() {
    for (k, want) in [("6", "2,2,4"), ("3", "2,2,2,2,2,3"), ("2", "8")] {
        assert_eq!(stdout(&run(&["quotient", "5,2", k])).trim(), want);
    }
}

#[test]
fn verify_builtin_corpus() {
    let o = run(&["verify-paper"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains(" 0 failed"));
}

#[test]
fn verify_tampered_and_empty() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"[{"kind":"charge","input":"9,6","expected":21,"paper_ref":"ok"},
            {"kind":"torsion","input":"5,2","expected":[7],"paper_ref":"tampered"}]"#,
    )
    .unwrap();
    let o = run(&["verify-paper", "--corpus", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let line = out.lines().find(|l| l.contains("tampered")).unwrap();
    assert!(line.trim_start().starts_with("1  FAIL"), "{line}");

    let empty = dir.path().join("empty.json");
    fs::write(&empty, "[]").unwrap();
    let o = run(&["verify-paper", "--corpus", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"));

    let broken = dir.path().join("broken.json");
    fs::write(&broken, r#"[{"kind":"dual","input":5,"expected":"4,2,2","paper_ref":""}]"#).unwrap();
    let o = run(&["verify-paper", "--corpus", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("row 0"), "{}", stderr(&o));
}

#[test]
fn diagram_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.svg"), dir.path().join("b.svg"));
    for p in [&a, &b] {
        assert_eq!(run(&["diagram", "5,2", "--out", p.to_str().unwrap()]).status.code(), Some(0));
    }
    let (x, y) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(x, y);
    assert!(String::from_utf8(x).unwrap().starts_with("<svg"));
    let nodal = dir.path().join("c.svg");
    run(&["diagram", "8", "--out", nodal.to_str().unwrap()]);
    assert_eq!(fs::read_to_string(&nodal).unwrap().matches("<circle").count(), 1);
}

#[test]
fn validate_tetrahedron_rejected() {
    let o = run(&["validate-typeiii", &data("tetrahedron_minus_one.json"), "--expected-star", "5,5,5"]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.contains("(b) triple point formula") && out.contains("FAIL"));
    assert!(out.contains("-1 + -1 = -2"));
}

#[test]
fn validate_symmetric_octahedron_and_quotient() {
    let dir = tempfile::tempdir().unwrap();
    let q = dir.path().join("quotient.json");
    let o = run(&[
        "validate-typeiii",
        &data("octahedron_5252.json"),
        "--expected-star",
        "5,2,5,2",
        "--symmetry",
        "0,3,4,1,2,5",
        "--out",
        q.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["report"]["total_charge"], 24);
    assert_eq!(v["symmetry"]["quotient_euler_characteristic"], 2);

    let o = run(&["validate-typeiii", q.to_str().unwrap(), "--expected-star", "5,2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(&["validate-typeiii", q.to_str().unwrap(), "--expected-star", "5,2", "--symmetry", "0,1,2,3"]);
    assert_eq!(o.status.code(), Some(0));

    let o = run(&["validate-typeiii", &data("octahedron_5252.json"), "--expected-star", "5,2,5,2", "--symmetry", "1,0,2,3,4,5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("NotAutomorphism"));
}

#[test]
fn malformed_complex_reported() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    fs::write(&p, r#"{"vertices":[{},{}],"edges":[{"from":0,"to":0,"d":1}],"faces":[]}"#).unwrap();
    let o = run(&["validate-typeiii", p.to_str().unwrap(), "--expected-star", "5,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("MalformedComplex"), "{}", stderr(&o));
}

#[test]
fn huge_values_stay_exact_in_json() {
    let max = i64::MAX.to_string();
    let word = format!("{max},{max}");
    let o = run(&["charge", &word, "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["charge"], "18446744073709551620");
    let o = run(&["monodromy", &word, "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    // max^2 - 2, written as a string rather than a lossy float.
    assert_eq!(v["trace"], "85070591730234615847396907784232501247");
    assert_eq!(v["det"], 1);
}
