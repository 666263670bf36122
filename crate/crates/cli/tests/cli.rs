use std::path::PathBuf;
use std::process::Command;

use paramcat_cli::{exit, parse_theta, run};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn circuit(name: &str) -> String {
    fixture(&format!("circuits/{name}.pqc"))
}

fn paramcat(args: &[&str]) -> paramcat_cli::Outcome {
    run(std::iter::once("paramcat").chain(args.iter().copied()))
}

#[test]
fn eval_rotation_chain_text() {
    let out = paramcat(&["eval", &circuit("rx_chain"), "--theta", "1.5707963267948966,0"]);
    assert_eq!(out.code, exit::OK, "{}", out.stderr);
    assert_eq!(out.stdout, "6.12323399574e-17+0i\t0+1i\n0+1i\t6.12323399574e-17+0i\n");
}

#[test]
fn eval_structured_record() {
    let out = paramcat(&[
        "eval",
        &circuit("rx_parallel"),
        "--theta",
        "1.5707963267948966, 0",
        "--format",
        "structured",
    ]);
    assert_eq!(out.code, exit::OK);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["command"], "eval");
    assert_eq!(v["matrix"]["rows"], 4);
    let im: Vec<f64> = serde_json::from_value(v["matrix"]["im"].clone()).unwrap();
    assert_eq!(im[2], 1.0);
    assert_eq!(im[8], 1.0);
}

#[test]
fn eval_without_parameters() {
    let out = paramcat(&["eval", &circuit("id2"), "--theta", ""]);
    assert_eq!(out.code, exit::OK);
    assert_eq!(out.stdout, "1+0i\t0+0i\n0+0i\t1+0i\n");
    assert_eq!(paramcat(&["eval", &circuit("id2")]).stdout, out.stdout);
}

#[test]
fn eval_error_codes() {
    let arity = paramcat(&["eval", &circuit("rx"), "--theta", "1,2"]);
    assert_eq!(arity.code, exit::ARITY);
    assert!(arity.stderr.contains("declares 1 parameter(s) but --theta has 2"));

    let dims = paramcat(&["eval", &circuit("bad_dims")]);
    assert_eq!(dims.code, exit::DIMENSION);
    assert!(dims.stderr.contains("output dimension 4") && dims.stderr.contains("input dimension 2"));

    let parse = paramcat(&["eval", &circuit("bad_param"), "--theta", "1"]);
    assert_eq!(parse.code, exit::INPUT);
    assert!(parse
        .stderr
        .ends_with("bad_param.pqc:2:4: parameter t1 out of range (params 1)\n"));

    assert_eq!(paramcat(&["eval", &circuit("rx"), "--theta", "pi"]).code, exit::INPUT);
    assert_eq!(paramcat(&["eval", &circuit("rx"), "--theta", "inf"]).code, exit::INPUT);
    assert_eq!(paramcat(&["eval", &circuit("missing")]).code, exit::INPUT);
}

#[test]
fn theta_lists() {
    assert_eq!(parse_theta(" 1.5, -2 ,0").unwrap(), vec![1.5, -2.0, 0.0]);
    assert_eq!(parse_theta("").unwrap(), Vec::<f64>::new());
    assert!(parse_theta("1,,2").is_err());
    assert!(parse_theta("NaN").is_err());
}

#[test]
fn check_equivalent_pairs() {
    for (a, b) in [("rx_chain", "rx_sum"), ("x_rz_x", "rz_neg"), ("swap_conj", "rz_second")] {
        let out = paramcat(&["check", &circuit(a), &circuit(b)]);
        assert_eq!(out.code, exit::OK, "{a} vs {b}: {}{}", out.stdout, out.stderr);
        assert!(out.stdout.starts_with("equivalent: 101 points"));
    }
}

#[test]
fn check_inequivalent_reports_counterexample() {
    let out = paramcat(&["check", &circuit("rz"), &circuit("rz_neg"), "--format", "json"]);
    assert_eq!(out.code, exit::INEQUIVALENT);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let verdict = &v["verdict"];
    assert_eq!(verdict["status"], "inequivalent");
    let theta = verdict["counterexample"]["point"][0].as_f64().unwrap();
    let deviation = verdict["counterexample"]["deviation"].as_f64().unwrap();
    // rz(t) - rz(-t) = diag(2i sin t, -2i sin t)
    assert!((deviation - 2.0 * theta.sin().abs()).abs() < 1e-12);
}

#[test]
fn check_phase_invariant() {
    // x ; z ; x = -z
    let z = fixture("circuits/z.pqc");
    let xzx = fixture("circuits/x_z_x.pqc");
    assert_eq!(paramcat(&["check", &z, &xzx]).code, exit::INEQUIVALENT);
    assert_eq!(paramcat(&["check", &z, &xzx, "--phase-invariant"]).code, exit::OK);
}

#[test]
fn check_mismatches() {
    let arity = paramcat(&["check", &circuit("rx"), &circuit("rx_sum")]);
    assert_eq!(arity.code, exit::ARITY);
    let dims = paramcat(&["check", &circuit("rx_chain"), &circuit("rx_parallel")]);
    assert_eq!(dims.code, exit::DIMENSION);
    assert_eq!(dims.stdout, "dimension mismatch: 2 -> 2 vs 4 -> 4\n");
    assert_eq!(
        paramcat(&["check", &circuit("rx"), &circuit("rx"), "--samples", "0"]).code,
        exit::INPUT
    );
    assert_eq!(
        paramcat(&["check", &circuit("rx"), &circuit("rx"), "--tol", "0"]).code,
        exit::INPUT
    );
}

#[test]
fn every_circuit_is_equivalent_to_itself() {
    let dir = PathBuf::from(fixture("circuits"));
    let mut checked = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path().to_string_lossy().into_owned();
        if path.contains("bad_") {
            continue;
        }
        let out = paramcat(&["check", &path, &path, "--samples", "10"]);
        assert_eq!(out.code, exit::OK, "{path}: {}", out.stderr);
        checked += 1;
    }
    assert!(checked >= 10);
}

#[test]
fn laws_pass_and_fail() {
    let ok = paramcat(&["laws", "--trials", "3"]);
    assert_eq!(ok.code, exit::OK);
    assert!(ok.stdout.ends_with("24 of 24 laws passed (3 trials each, seed 0)\n"));

    let perm = paramcat(&["laws", "--trials", "3", "--sampler", "permutation", "--tol", "1e-300"]);
    assert_eq!(perm.code, exit::OK);

    let bad = paramcat(&["laws", "--trials", "3", "--corrupt-tensor"]);
    assert_eq!(bad.code, exit::LAWS_FAILED);
    let line = bad
        .stdout
        .lines()
        .find(|l| l.starts_with("tensor.interchange"))
        .unwrap();
    assert!(line.contains("FAIL"));
    assert!(paramcat(&["laws", "--help"]).stdout.contains("--trials"));
    assert!(!paramcat(&["laws", "--help"]).stdout.contains("corrupt"));
}

#[test]
fn lattice_levels() {
    let spec = fixture("entailment.lat");
    let one = paramcat(&["lattice", &spec, "--level", "1"]);
    assert_eq!(one.code, exit::OK);
    assert_eq!(
        one.stdout,
        "A -> A\nA -> B\nA -> C\nA -> D\nB -> B\nB -> D\nC -> C\nC -> D\nD -> D\n"
    );
    let top = paramcat(&["lattice", &spec]);
    assert_eq!(top.stdout, "A -> A\nA -> B\nA -> D\nB -> B\nC -> C\nC -> D\nD -> D\n");
    let bot = paramcat(&["lattice", &spec, "--level", "bot", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&bot.stdout).unwrap();
    assert_eq!(v["edges"].as_array().unwrap().len(), 16);
    assert_eq!(v["edges"][1], serde_json::json!(["A", "B"]));
    assert_eq!(paramcat(&["lattice", &spec, "--level", "maybe"]).code, exit::INPUT);
}

#[test]
fn lattice_validation_failure() {
    let out = paramcat(&["lattice", &fixture("broken_entailment.lat")]);
    assert_eq!(out.code, exit::LATTICE_INVALID);
    assert!(out.stderr.contains("at (A, B, D)"));
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    assert_eq!(paramcat(&[]).code, exit::INPUT);
    assert_eq!(paramcat(&["frobnicate"]).code, exit::INPUT);
    assert_eq!(paramcat(&["eval", "x.pqc", "--format", "xml"]).code, exit::INPUT);
    let help = paramcat(&["--help"]);
    assert_eq!(help.code, exit::OK);
    assert!(help.stdout.contains("lattice"));
}

#[test]
fn binary_exit_codes_and_streams() {
    let bin = env!("CARGO_BIN_EXE_paramcat");
    let out = Command::new(bin)
        .args(["check", &circuit("rz"), &circuit("rz_neg")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(exit::INEQUIVALENT));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("counterexample theta = ("));
    let out = Command::new(bin).args(["eval", &circuit("bad_dims")]).output().unwrap();
    assert_eq!(out.status.code(), Some(exit::DIMENSION));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error: "));
}
