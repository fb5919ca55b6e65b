use std::process::{Command, Output};

fn fubini(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fubini")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = fubini(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["schubert", "--word", "2113", "--k", "3", "--format", "ascii"]), "x1^2 + x1*x2 + x1*x3");
    assert_eq!(stdout(&["hilbert", "--ring", "R", "--n", "3", "--k", "2"]), "[1,3,2]");
    assert_eq!(stdout(&["expand", "--n", "4", "--k", "3", "--u", "1123", "--v", "1232"]), r#"{"1132":-1,"2213":2}"#);
}

#[test]
fn json_is_the_default_and_parses() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["schubert", "--word", "2113", "--k", "3"])).unwrap();
    assert_eq!(v["polynomial"], "x1^2 + x1*x2 + x1*x3");
    let v: serde_json::Value = serde_json::from_str(&stdout(&["fieldlab", "count", "--n", "3", "--k", "2", "--p", "2", "--verify-orbits"])).unwrap();
    assert_eq!(v["closed_form"], 12);
    assert_eq!(v["enumerated"], 12);
    assert_eq!(v["match"], true);
    assert_eq!(v["orbits"]["free"], true);
    let words: serde_json::Value = serde_json::from_str(&stdout(&["words", "--n", "3", "--k", "2"])).unwrap();
    assert_eq!(words.as_array().unwrap().len(), 6);
}

#[test]
fn other_formats() {
    assert_eq!(stdout(&["hilbert", "--ring", "T", "--n", "2", "--k", "1", "--r", "1", "--format", "latex"]), "1 + 2q + q^{2}");
    assert_eq!(
        stdout(&["expand", "--n", "4", "--k", "3", "--u", "1123", "--v", "1232", "--format", "latex"]),
        r"-\mathfrak{S}_{1132} + 2\mathfrak{S}_{2213}"
    );
    let csv = stdout(&["expand", "--n", "3", "--k", "2", "--format", "csv"]);
    assert!(csv.starts_with("u,v,112,121,122,211,212,221\n"));
    assert_eq!(csv.lines().count(), 37);
    assert_eq!(stdout(&["nf", "--n", "3", "--k", "2", "--poly", "x1^2", "--format", "ascii"]), "0");
    let canon = stdout(&[
        "fieldlab",
        "canonicalize",
        "--matrix",
        "0 0 0 2 0 0 3; 1 6 0 2 1 4 0; -1/3 0 -4 -8/3 -1/3 2/3 3",
        "--format",
        "ascii",
    ]);
    assert_eq!(canon.lines().next(), Some("2331231"));
}

#[test]
fn output_is_deterministic() {
    let args = ["frobenius", "--n", "4", "--k", "2"];
    assert_eq!(stdout(&args), stdout(&args));
    let args = ["cells", "--word", "441122"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn bad_flags_exit_with_2() {
    assert_eq!(fubini(&["hilbert", "--n", "3"]).status.code(), Some(2));
    assert_eq!(fubini(&["hilbert", "--n", "2", "--k", "3"]).status.code(), Some(2));
    assert_eq!(fubini(&["hilbert", "--ring", "Rs", "--n", "3", "--k", "2"]).status.code(), Some(2));
    assert_eq!(fubini(&["schubert", "--word", "12x"]).status.code(), Some(2));
    assert_eq!(fubini(&["words", "--n", "3", "--k", "2", "--format", "latex"]).status.code(), Some(2));
}

#[test]
fn quick_selftest_passes() {
    let out = fubini(&["selftest", "--quick", "--format", "json"]);
    assert!(out.status.success());
    let reports: Vec<serde_json::Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(reports.len(), 10);
    assert!(reports.iter().all(|r| r["passed"] == true && r["counterexample"].is_null()));
}
