//! Black-box tests of the command-line binary: verbs, exit codes, and the
//! seed environment variable.

use std::process::{Command, Output};

fn paracurv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paracurv"))
        .args(args)
        .env_remove("PARACURV_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn validate_accepts_bundled_names() {
    let o = paracurv(&["validate", "para_kenmotsu_s5"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("valid"));
    assert!(stdout(&o).contains("structure present"));
}

#[test]
fn validate_rejects_missing_file_with_code_2() {
    let o = paracurv(&["validate", "/nonexistent/definition.ini"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("error"));
}

#[test]
fn run_text_reports_golden_values() {
    let o = paracurv(&["run", "para_kenmotsu_s5"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("classification: alpha-para-Kenmotsu"), "{out}");
    assert!(out.contains("tau = 6 (expected 6*alpha^2 = 6)"), "{out}");
    assert!(out.contains("overall: PASS"), "{out}");
}

#[test]
fn run_json_has_stable_schema_keys() {
    let o = paracurv(&["run", "para_kenmotsu_s5", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in [
        "conventions",
        "axioms",
        "normality",
        "alpha",
        "beta",
        "classification",
        "tau",
        "tau_sampled_max_dev",
        "theorems",
        "pass",
    ] {
        assert!(v.get(key).is_some(), "missing key {key}");
    }
    assert_eq!(v["classification"], "alpha-para-Kenmotsu");
    assert_eq!(v["pass"], true);
}

#[test]
fn run_is_byte_identical_for_fixed_seed() {
    let args = ["run", "para_kenmotsu_s5", "--format", "json", "--seed", "7"];
    let a = paracurv(&args);
    let b = paracurv(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_env_var_matches_flag() {
    let flagged = paracurv(&["run", "para_kenmotsu_s5", "--format", "json", "--seed", "11"]);
    let via_env = Command::new(env!("CARGO_BIN_EXE_paracurv"))
        .args(["run", "para_kenmotsu_s5", "--format", "json"])
        .env("PARACURV_SEED", "11")
        .output()
        .unwrap();
    assert!(flagged.status.success() && via_env.status.success());
    assert_eq!(flagged.stdout, via_env.stdout);
}

#[test]
fn axiom_failure_exits_3() {
    let dir = std::env::temp_dir().join("paracurv_cli_axiom");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken_phi.ini");
    std::fs::write(
        &path,
        "\
[chart]
coords = x y z
range x = -1 1
range y = -1 1
range z = -1.5 -0.5
[metric]
g 1 1 = exp(2*z)
g 2 2 = -exp(2*z)
g 3 3 = 1
[phi]
phi 1 2 = exp(x)
phi 2 1 = 1
[xi]
xi 3 = 1
[eta]
eta 3 = 1
",
    )
    .unwrap();
    let o = paracurv(&["run", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    assert!(stdout(&o).contains("overall: FAIL"));
}

#[test]
fn theorem_failure_exits_4() {
    // metric-only definition that is not Einstein: axioms are absent, the
    // Einstein check fails
    let dir = std::env::temp_dir().join("paracurv_cli_theorem");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("not_einstein.ini");
    std::fs::write(
        &path,
        "\
[chart]
coords = x y z
range x = -1 1
range y = -1 1
range z = -1.5 -0.5
[metric]
g 1 1 = exp(2*z)
g 2 2 = -exp(2*z)
g 3 3 = 1 + z^2
",
    )
    .unwrap();
    let o = paracurv(&["run", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4), "{}", stdout(&o));
}

#[test]
fn parse_error_exits_2_with_location() {
    let dir = std::env::temp_dir().join("paracurv_cli_parse");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad_expr.ini");
    std::fs::write(
        &path,
        "[chart]\ncoords = x\nrange x = 0 1\n[metric]\ng 1 1 = x^w\n",
    )
    .unwrap();
    let o = paracurv(&["run", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 5"), "{}", stderr(&o));
}

#[test]
fn example_prints_bundled_definitions() {
    let list = paracurv(&["example"]);
    assert!(list.status.success());
    let names = stdout(&list);
    for n in ["para_kenmotsu_s5", "paracosymplectic_flat", "para_kenmotsu_alpha2"] {
        assert!(names.contains(n));
        let o = paracurv(&["example", n]);
        assert!(o.status.success());
        assert!(stdout(&o).contains("[metric]"));
    }
    let missing = paracurv(&["example", "no_such_example"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn conventions_prints_the_calibration_banner() {
    let o = paracurv(&["conventions"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("R(X,Y)Z"));
    assert!(out.contains("d eta(X,Y)"));
    assert!(out.contains("alpha"));
}

#[test]
fn flat_example_runs_with_skipped_stages() {
    let o = paracurv(&["run", "paracosymplectic_flat"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("classification: paracosymplectic"), "{out}");
    assert!(out.contains("skipped (hypothesis not met)"), "{out}");
    assert!(out.contains("overall: PASS"), "{out}");
}
