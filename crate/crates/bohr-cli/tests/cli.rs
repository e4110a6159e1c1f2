//! End-to-end tests of the `bohr` binary: example invocations, exit
//! codes, determinism, and output formats.

use std::io::Write as _;
use std::process::{Command, Output};

fn bohr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bohr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn thm19_reports_value_over_sup_pnorm() {
    let out = bohr(&[
        "bounds",
        "--formula",
        "thm19",
        "--p",
        "1",
        "--lambda",
        "2",
        "--normU",
        "1",
        "--space",
        "lq:q=2:n=4",
    ]);
    let v = stdout_json(&out);
    let report = &v.as_array().unwrap()[0];
    // max{1/3, 1/2} divided by sup_pnorm = 2 on the Euclidean ball
    assert!((report["value"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    assert_eq!(report["formula_id"], "thm19");
    assert_eq!(report["certified"], true);
}

#[test]
fn cor14_example_value() {
    let out = bohr(&[
        "bounds", "--formula", "cor14", "--regime", "p_eq_1", "--q", "inf", "--n", "100",
        "--lambda", "2",
    ]);
    let v = stdout_json(&out);
    let value = v.as_array().unwrap()[0]["value"].as_f64().unwrap();
    assert!((value - 0.07153).abs() < 1e-5, "value {value}");
}

#[test]
fn unknown_formula_exits_2_and_lists_ids() {
    let out = bohr(&["bounds", "--formula", "thm99", "--lambda", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    for id in [
        "thm11", "cor11", "thm19", "thm12", "thm12u", "cor14", "thm13a", "thm13", "sandwich",
    ] {
        assert!(err.contains(id), "missing {id} in: {err}");
    }
}

#[test]
fn malformed_and_empty_ranges_exit_2() {
    for range in ["64..2", "2..8:x1", "nope", "2..8:q3"] {
        let out = bohr(&[
            "sweep", "--formula", "cor14", "--q", "inf", "--lambda", "2", "--n", range,
        ]);
        assert_eq!(out.status.code(), Some(2), "range {range}");
    }
}

#[test]
fn estimate_is_byte_identical_per_seed() {
    let args = [
        "estimate",
        "--space",
        "lq:q=inf:n=2",
        "--family",
        "mobius",
        "--lambda",
        "1.5",
        "--p",
        "2",
        "--tol",
        "1e-4",
        "--seed",
        "7",
    ];
    let a = bohr(&args);
    let b = bohr(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn estimate_classical_disc_value() {
    let out = bohr(&[
        "estimate",
        "--space",
        "lq:q=inf:n=1",
        "--family",
        "mobius",
        "--lambda",
        "1",
        "--p",
        "1",
        "--tol",
        "1e-4",
    ]);
    let v = stdout_json(&out);
    let upper = v["upper_bracket"].as_f64().unwrap();
    assert!((upper - 1.0 / 2.98).abs() < 1e-3, "upper {upper}");
    assert_eq!(v["certified"], true);
    assert_eq!(v["family_id"], "mobius[6]");
}

#[test]
fn estimate_reads_polynomial_files() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        "# one-term demo\npoly demo\ndim 1\nkind scalar\na 1 = 0.9,0\nend\n"
    )
    .unwrap();
    let path = format!("file:{}", file.path().display());
    let out = bohr(&[
        "estimate",
        "--space",
        "lq:q=inf:n=1",
        "--family",
        &path,
        "--lambda",
        "1",
        "--p",
        "1",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["family_id"], "demo[1]");

    let missing = bohr(&[
        "estimate",
        "--space",
        "lq:q=inf:n=1",
        "--family",
        "file:/nonexistent/polys.txt",
        "--lambda",
        "1",
    ]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn verify_example11_reports_k6() {
    let out = bohr(&["verify", "--suite", "example11", "--r", "0.1", "--p", "1"]);
    let v = stdout_json(&out);
    let report = &v.as_array().unwrap()[0];
    assert_eq!(report["pass"], true);
    let info: Vec<String> = report["info"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect();
    assert!(info.iter().any(|l| l.contains("k = 6")), "{info:?}");
}

#[test]
fn verify_failure_count_becomes_exit_code() {
    // p = 2 gives Parseval equality: no k can violate, so the suite
    // reports one failed check and the exit code is 9 + 1.
    let out = bohr(&["verify", "--suite", "example11", "--r", "0.1", "--p", "2"]);
    assert_eq!(out.status.code(), Some(10));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap()[0]["pass"], false);
}

#[test]
fn verify_unknown_suite_exits_2() {
    let out = bohr(&["verify", "--suite", "everything"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("schwarz_pick"));
}

#[test]
fn sweep_emits_csv_rows() {
    let out = bohr(&[
        "sweep", "--formula", "cor14", "--regime", "p_eq_1", "--q", "inf", "--lambda", "2",
        "--n", "2..64:x2",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,formula_id,role,value,certified");
    assert_eq!(lines.len(), 7, "header + 6 data rows: {text}");
    assert!(lines[1].starts_with("2,cor14,lower,"));
    assert!(lines[6].starts_with("64,cor14,lower,"));
}

#[test]
fn constants_overrides_flow_through() {
    // default E3 leaves the report uncertified
    let out = bohr(&[
        "bounds", "--formula", "thm12", "--p", "3", "--lambda", "2", "--n", "4",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v.as_array().unwrap()[0]["certified"], false);

    // explicit E3 certifies and scales the value
    let out = bohr(&[
        "bounds", "--formula", "thm12", "--p", "3", "--lambda", "2", "--n", "4", "--const",
        "E3=0.5",
    ]);
    let v = stdout_json(&out);
    let report = &v.as_array().unwrap()[0];
    assert_eq!(report["certified"], true);
    let expected = 0.5 * (7.0f64 / 15.0).cbrt();
    assert!((report["value"].as_f64().unwrap() - expected).abs() < 1e-12);

    // config file value is overridden by the inline constant
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "E3 = 0.25 # file value loses").unwrap();
    let config = file.path().display().to_string();
    let out = bohr(&[
        "bounds", "--formula", "thm12", "--p", "3", "--lambda", "2", "--n", "4", "--config",
        &config, "--const", "E3=0.5",
    ]);
    let v = stdout_json(&out);
    assert!((v.as_array().unwrap()[0]["value"].as_f64().unwrap() - expected).abs() < 1e-12);
}

#[test]
fn norms_sup_pnorm_example() {
    let out = bohr(&[
        "norms", "--op", "sup-pnorm", "--space", "lq:q=inf:n=2", "--p", "1",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["value"], 2.0);
    assert_eq!(v["closed_form"], true);
}

#[test]
fn verify_emits_table_alongside_json() {
    let out = bohr(&["verify", "--suite", "example11"]);
    assert!(out.status.success());
    let table = String::from_utf8_lossy(&out.stderr);
    assert!(table.contains("name") && table.contains("worst_margin"), "{table}");
    // stdout stays pure JSON
    assert!(serde_json::from_slice::<serde_json::Value>(&out.stdout).is_ok());
}
