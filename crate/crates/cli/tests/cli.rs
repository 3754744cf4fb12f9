//! Black-box checks of the command-line surface: exit codes, table shapes,
//! output determinism.

use assert_cmd::Command;
use predicates::prelude::*;

fn bin() -> Command {
    Command::cargo_bin("curved-maxwell").unwrap()
}

fn stdout_of(cmd: &mut Command) -> String {
    let out = cmd.output().unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn column(csv: &str, idx: usize) -> Vec<f64> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').nth(idx).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn spectrum_lists_low_levels_in_order() {
    let text = stdout_of(bin().args(["spectrum", "--j-max", "2", "--n-max", "1"]));
    assert_eq!(column(&text, 2), [2.0, 3.0, 3.0, 4.0]);
    assert_eq!(column(&text, 3), [3.0, 3.0, 5.0, 5.0]);
}

#[test]
fn doubling_the_radius_halves_every_frequency() {
    let text = stdout_of(bin().args(["spectrum", "--j-max", "2", "--n-max", "1", "--rho", "2"]));
    assert_eq!(column(&text, 2), [1.0, 1.5, 1.5, 2.0]);
}

#[test]
fn open_model_spectrum_is_empty_with_explanation() {
    bin()
        .args(["spectrum", "--model", "h3"])
        .assert()
        .success()
        .stdout("j,n,omega,degeneracy\n")
        .stderr(predicate::str::contains(
            "no discrete spectrum for frequencies of electromagnetic modes arises",
        ));
}

#[test]
fn identical_config_gives_identical_bytes() {
    let args = ["mode", "--j", "1", "--n", "0", "--grid", "3", "--time", "0.3"];
    let a = bin().args(args).output().unwrap();
    let b = bin().args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn mode_csv_row_count_is_grid_volume() {
    let text = stdout_of(bin().args(["mode", "--j", "1", "--n", "0", "--grid", "3"]));
    assert_eq!(text.lines().count(), 1 + 27);
    assert!(text.starts_with("t,chi,theta,phi,psi1_re,"));
}

#[test]
fn mode_json_schema_and_residual_column() {
    let out = bin()
        .args(["mode", "--j", "2", "--n", "1", "--grid", "4", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 64);
    for r in rows {
        for key in [
            "t", "chi", "theta", "phi", "psi1_re", "psi2_re", "psi3_re", "psi1_im", "psi2_im",
            "psi3_im", "e1", "e2", "e3", "cb1", "cb2", "cb3", "residual",
        ] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
        assert!(r["residual"].as_f64().unwrap() <= 1e-6);
    }
}

#[test]
fn open_model_mode_table_works_too() {
    let text = stdout_of(bin().args(["mode", "--model", "h3", "--j", "1", "--omega", "1.3", "--grid", "3"]));
    assert_eq!(text.lines().count(), 1 + 27);
}

#[test]
fn closed_model_mode_requires_an_overtone() {
    bin().args(["mode", "--j", "1"]).assert().code(2);
    bin()
        .args(["mode", "--model", "h3", "--j", "1", "--n", "0"])
        .assert()
        .code(2);
}

#[test]
fn detuned_frequency_request_exits_nonzero() {
    bin()
        .args(["verify", "radial", "--model", "s3", "--j", "1", "--omega", "2.5"])
        .assert()
        .code(1)
        .stdout(predicate::str::contains("quantization"));
}

#[test]
fn quantized_request_passes() {
    bin()
        .args(["verify", "radial", "--model", "s3", "--j", "1", "--n", "0"])
        .assert()
        .success();
}

#[test]
fn algebra_scope_reports_every_check() {
    bin()
        .args(["verify", "algebra"])
        .assert()
        .success()
        .stdout(
            predicate::str::contains("[PASS]")
                .and(predicate::str::contains("checks passed"))
                .and(predicate::str::contains("[FAIL]").not()),
        );
}

#[test]
fn single_mode_verify_scope_passes() {
    bin()
        .args(["verify", "modes", "--model", "s3", "--j", "1", "--m", "0", "--n", "0", "--grid", "6"])
        .assert()
        .success();
}

#[test]
fn flatcheck_command_passes() {
    bin().arg("flatcheck").assert().success();
}

#[test]
fn tolerance_override_can_force_failure() {
    // An absurdly tight geometry tolerance must flip the exit code, proving
    // the flags reach the checks.
    bin()
        .args(["verify", "geometry", "--points", "20", "--tol-geometry", "1e-30"])
        .assert()
        .code(1)
        .stdout(predicate::str::contains("[FAIL]"));
}
