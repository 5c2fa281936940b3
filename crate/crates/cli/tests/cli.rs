use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn qspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qspace")).args(args).output().expect("run qspace")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Parse and serialize again with the typed schema; the bytes must not move.
fn assert_round_trip<T: serde::de::DeserializeOwned + serde::Serialize>(text: &str) {
    let text = text.trim_end();
    let value: T = serde_json::from_str(text).unwrap();
    assert_eq!(serde_json::to_string(&value).unwrap(), text);
}

#[test]
fn stats_examples() {
    let be = qspace(&["stats", "--kind", "be", "--particles", "2", "--levels", "2"]);
    assert_eq!(be.status.code(), Some(0));
    let text = stdout(&be);
    assert!(text.contains("count: 3") && text.contains("probability: 1/3"), "{text}");

    let fd = qspace(&["stats", "--kind", "fd", "--particles", "3", "--levels", "2", "--json"]);
    assert_eq!(fd.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&fd)).unwrap();
    assert_eq!(json["count"], 0);
}

#[test]
fn stats_json_lists_microstates_and_round_trips() {
    let out = qspace(&["stats", "--kind", "mb", "--particles", "2", "--levels", "2", "--enumerate", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["count"], 4);
    assert_eq!(json["probability"], "1/4");
    assert_eq!(json["microstates"].as_array().unwrap().len(), 4);
    assert_round_trip::<serde_json::Value>(&text);
}

#[test]
fn stats_cap_is_enforced() {
    let out = qspace(&["stats", "--kind", "mb", "--particles", "6", "--levels", "5", "--enumerate", "--cap", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn commutator_sweeps_pass() {
    let out = qspace(&["check-commutators", "--kind", "fermion", "--levels", "3", "--max-occ", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS"));

    let out = qspace(&["state", "check-commutators", "--kind", "boson", "--levels", "3", "--max-occ", "4", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["passed"], true);
    assert!(json["max_residual"].as_f64().unwrap() <= json["tolerance"].as_f64().unwrap());
}

#[test]
fn oracle_and_permutation_demos_pass() {
    let out = qspace(&["check-oracle", "--levels", "3", "--max-len", "3", "--samples", "5", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = qspace(&["demo-permutation", "--max-atoms", "4", "--kinds", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["passed"], true);
}

#[test]
fn output_is_deterministic() {
    let args = ["check-oracle", "--levels", "2", "--max-len", "2", "--samples", "4", "--json"];
    assert_eq!(stdout(&qspace(&args)), stdout(&qspace(&args)));
}

#[test]
fn state_files_flow_through_operators() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert_eq!(qspace(&["state", "new", "--kind", "boson", "--word", "0,0", "--out", path(&a)]).status.code(), Some(0));
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text.trim_end(), r#"{"kind":"boson","terms":[{"coeff":[1.0,0.0],"occ":{"0":2}}]}"#);
    assert_round_trip::<qspace::fock::StateFile>(&text);

    let out = qspace(&["state", "norm", "--in", path(&a), "--json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((json["norm"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-12);

    let out = qspace(&["state", "apply", "--in", path(&a), "--op", "annihilate", "--level", "0", "--out", path(&b)]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&b).unwrap();
    assert_eq!(text.trim_end(), r#"{"kind":"boson","terms":[{"coeff":[2.0,0.0],"occ":{"0":1}}]}"#);

    let out = qspace(&["state", "inner", "--in", path(&b), "--in", path(&b), "--json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["inner"], serde_json::json!([4.0, 0.0]));
}

#[test]
fn fermion_states_pick_up_signs_and_null_norms() {
    let out = qspace(&["state", "new", "--kind", "fermion", "--word", "1,0"]);
    assert!(stdout(&out).contains(r#""coeff":[-1.0,0.0]"#));

    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.json");
    qspace(&["state", "new", "--kind", "fermion", "--word", "1,1", "--out", path(&f)]);
    let out = qspace(&["state", "norm", "--in", path(&f), "--json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["null_norm"], true);
}

#[test]
fn mismatched_state_kinds_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let (b, f) = (dir.path().join("b.json"), dir.path().join("f.json"));
    qspace(&["state", "new", "--kind", "boson", "--word", "0", "--out", path(&b)]);
    qspace(&["state", "new", "--kind", "fermion", "--word", "0", "--out", path(&f)]);
    assert_eq!(qspace(&["state", "inner", "--in", path(&b), "--in", path(&f)]).status.code(), Some(2));
    assert_eq!(qspace(&["state", "inner", "--in", path(&b)]).status.code(), Some(2));
}

#[test]
fn qset_commands() {
    let dir = tempfile::tempdir().unwrap();
    let z = dir.path().join("z.json");
    let pool = dir.path().join("pool.json");
    let text = r#"{"m":{"electron":2,"proton":1},"classical":["a"]}"#;
    fs::write(&z, text).unwrap();
    fs::write(&pool, r#"{"m":{"electron":3},"classical":[]}"#).unwrap();

    let out = qspace(&["qset", "inspect", "--in", path(&z), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["qcard"], 4);
    let canonical: qspace::QSet = serde_json::from_value(json["canonical"].clone()).unwrap();
    assert_eq!(serde_json::to_string(&canonical).unwrap(), text);

    let out = qspace(&["qset", "singleton", "--in", path(&z), "--kind", "electron"]);
    assert_eq!(stdout(&out).trim_end(), r#"{"m":{"electron":2},"classical":[]}"#);
    assert_round_trip::<qspace::QSet>(&stdout(&out));

    let out = qspace(&["qset", "swap", "--in", path(&z), "--pool", path(&pool), "--kind", "electron"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim_end(), text);

    // the pool has no extra proton to swap in
    let out = qspace(&["qset", "swap", "--in", path(&z), "--pool", path(&pool), "--kind", "proton"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(qspace(&["stats", "--kind", "xx", "--particles", "1", "--levels", "1"]).status.code(), Some(2));
    assert_eq!(qspace(&["check-commutators", "--kind", "boson", "--levels", "2", "--max-occ", "2", "--tol", "0"]).status.code(), Some(2));
    assert_eq!(qspace(&["state", "norm", "--in", "/does/not/exist.json"]).status.code(), Some(2));
    assert_eq!(qspace(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qspace(&["--help"]).status.code(), Some(0));
}
