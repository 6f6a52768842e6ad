//! End-to-end runs of the gradex binary: golden outputs, the JSON report
//! contract, and the exit-code convention (0 pass, 1 property failure,
//! 2 usage/parse error).

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gradex"))
}

fn write_spec(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("gradex-cli-{name}.json"));
    std::fs::write(&path, contents).unwrap();
    path
}

fn flux(n: usize) -> PathBuf {
    write_spec(
        &format!("flux{n}"),
        &format!("{{\"preset\":{{\"kind\":\"flux\",\"N\":{n}}}}}"),
    )
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn normal_form_golden() {
    let spec = flux(3);
    let spec = spec.to_str().unwrap();
    let out = run(&["--spec", spec, "normal-form", "x2*x1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "-1 * x1*x2");

    let out = run(&["--spec", spec, "--json", "normal-form", "x2*x1"]);
    let v = json(&out);
    assert_eq!(v["command"], "normal-form");
    assert_eq!(v["verdict"], "ok");
    assert_eq!(v["details"]["result"], "-1 * x1*x2");
    assert_eq!(v["spec_digest"].as_str().unwrap().len(), 64);
    assert!(v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn mul_golden() {
    let spec = flux(2);
    let spec = spec.to_str().unwrap();
    let out = run(&["--spec", spec, "mul", "x1+x2", "x1+x2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "2 * x1*x2");

    let spec3 = flux(3);
    let out = run(&["--spec", spec3.to_str().unwrap(), "mul", "x1+x2", "x1+x2"]);
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn validate_pass_and_fail() {
    let good = flux(2);
    let out = run(&["--spec", good.to_str().unwrap(), "validate"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verdict: pass"));

    // Asymmetric sigma: structurally parseable, fails the axiom checks.
    let bad = write_spec(
        "asym",
        r#"{
            "group": {"rank": 2, "modulus": 2},
            "q": {"kind": "root_of_unity", "order": 2},
            "sigma": [[0, 1], [0, 0]],
            "omega": [[0, 0], [0, 0]]
        }"#,
    );
    let out = run(&["--spec", bad.to_str().unwrap(), "--json", "validate"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"], "fail");
    assert!(!v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn hopf_check_passes_on_flux() {
    for n in [2, 3] {
        let spec = flux(n);
        let out = run(&["--spec", spec.to_str().unwrap(), "--json", "hopf-check"]);
        assert_eq!(out.status.code(), Some(0), "flux N = {n}");
        let v = json(&out);
        assert_eq!(v["verdict"], "pass");
        assert!(v["details"]["hopf_pairs_checked"].as_u64().unwrap() > 0);
    }
}

#[test]
fn galois_check_modes() {
    let spec2 = flux(2);
    let out = run(&["--spec", spec2.to_str().unwrap(), "--json", "galois-check"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "galois");
    assert_eq!(v["details"]["pairs_checked"], 16);
    assert_eq!(v["details"]["beta_surjective"], true);

    let spec3 = flux(3);
    let out = run(&[
        "--spec",
        spec3.to_str().unwrap(),
        "--json",
        "galois-check",
        "--quotient",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"], "not_galois");
    assert_eq!(v["details"]["mode"], "quotient");
    let failures = v["failures"].as_array().unwrap();
    assert!(!failures.is_empty());
    assert!(failures[0].as_str().unwrap().contains("dimensions"));
}

#[test]
fn beta_golden() {
    let spec = flux(2);
    let out = run(&["--spec", spec.to_str().unwrap(), "beta", "x1", "x2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "(x1*x2) (x) (0,1)");

    let out = run(&["--spec", spec.to_str().unwrap(), "beta", "x1", "x2", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "(x1*x2) (x) (0,1) (x) (0,0)");
}

#[test]
fn preset_emits_loadable_spec() {
    let out = run(&["preset", "flux", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["preset"]["kind"], "flux");
    assert_eq!(doc["preset"]["N"], 3);

    let path = write_spec("roundtrip", &stdout(&out));
    let out = run(&["--spec", path.to_str().unwrap(), "normal-form", "x3*x2*x1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "-1 * x1*x2*x3");
}

#[test]
fn usage_and_parse_errors_exit_2() {
    // Missing --spec.
    let out = run(&["classify"]);
    assert_eq!(out.status.code(), Some(2));

    // Unreadable spec path.
    let out = run(&["--spec", "/nonexistent/spec.json", "classify"]);
    assert_eq!(out.status.code(), Some(2));

    // Unknown key in strict spec JSON.
    let bad = write_spec("typo", r#"{"preset": {"kind": "flux", "N": 2}, "sgima": []}"#);
    let out = run(&["--spec", bad.to_str().unwrap(), "validate"]);
    assert_eq!(out.status.code(), Some(2));

    // Malformed element grammar.
    let spec = flux(2);
    let out = run(&["--spec", spec.to_str().unwrap(), "normal-form", "x1**"]);
    assert_eq!(out.status.code(), Some(2));

    // Generator index out of range for the spec.
    let out = run(&["--spec", spec.to_str().unwrap(), "normal-form", "x9"]);
    assert_eq!(out.status.code(), Some(2));

    // Unknown preset name.
    let out = run(&["preset", "vortex", "2"]);
    assert_eq!(out.status.code(), Some(2));
}
