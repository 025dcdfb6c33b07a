//! End-to-end tests of the compiled binary: exit codes, report schema,
//! determinism, and data formats.

use std::process::Output;

use xell::report::{Report, Status};

fn xell(args: &[&str]) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_xell"))
        .args(args)
        .env_remove("XELL_JOBS")
        .output()
        .expect("binary launches")
}

fn parse_report(output: &Output) -> Report {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not a report: {e}\n--- stdout ---\n{}",
            String::from_utf8_lossy(&output.stdout)
        )
    })
}

#[test]
fn verification_report_round_trips_and_exits_zero() {
    let out = xell(&["verify", "lemmas", "--n-max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let report = parse_report(&out);
    assert_eq!(report.command, "verify lemmas");
    assert_eq!(report.inputs["n-max"], "4");
    assert_eq!(report.checks.len(), 4 * 5);
    assert!(report.checks.iter().all(|c| c.status == Status::Pass));
    // Round trip: serialize the parsed report and parse it again.
    let again: Report =
        serde_json::from_str(&serde_json::to_string(&report).expect("serializes"))
            .expect("round trips");
    assert_eq!(again, report);
    // Checks come back sorted by name.
    let names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort_unstable();
    assert_eq!(names, sorted);
}

#[test]
fn family_filter_restricts_check_names() {
    let out = xell(&["verify", "lemmas", "--n-max", "2", "--family", "jacobi"]);
    assert_eq!(out.status.code(), Some(0));
    let report = parse_report(&out);
    assert!(!report.checks.is_empty());
    assert!(report
        .checks
        .iter()
        .all(|c| c.name.starts_with("lemma-c/") || c.name.starts_with("lemma-d/")));
}

#[test]
fn injected_failure_flips_the_exit_code() {
    let out = xell(&["verify", "lemmas", "--n-max", "1", "--inject-failure"]);
    assert_eq!(out.status.code(), Some(1));
    let report = parse_report(&out);
    let injected = report
        .checks
        .iter()
        .find(|c| c.name == "injected/forced-failure")
        .expect("the synthetic check is present");
    assert_eq!(injected.status, Status::Fail);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("FAIL injected/forced-failure"));
}

#[test]
fn usage_and_constraint_errors_exit_two() {
    // Unknown flag.
    let out = xell(&["verify", "lemmas", "--n-max", "1", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
    // Missing --h for a coupled system.
    let out = xell(&["verify", "shape", "--system", "trig-dpt", "--ell", "1", "--g", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // Couplings violating the deformation bound.
    let out = xell(&[
        "verify", "shape", "--system", "hyp-dpt", "--ell", "3", "--g", "1", "--h", "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // Malformed rational.
    let out = xell(&["verify", "shape", "--system", "radial", "--ell", "1", "--g", "x"]);
    assert_eq!(out.status.code(), Some(2));
    // No report written on constraint errors.
    assert!(out.stdout.is_empty());
}

#[test]
fn identical_invocations_agree_modulo_elapsed_time() {
    let args = [
        "verify", "shape", "--system", "trig-dpt", "--ell", "1", "--g", "1", "--h", "9/2",
        "--seeds", "8", "--rng-seed", "13",
    ];
    let first = xell(&args);
    let second = xell(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(second.status.code(), Some(0));
    let mut a = parse_report(&first);
    let mut b = parse_report(&second);
    a.elapsed_ms = 0;
    b.elapsed_ms = 0;
    assert_eq!(a, b);
}

#[test]
fn poly_csv_has_header_and_lf_rows() {
    let out = xell(&[
        "poly", "xell", "--system", "radial", "--ell", "1", "--n", "2", "--g", "1",
        "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).expect("utf-8");
    assert!(!text.contains('\r'), "rows must be LF-terminated");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "power,coefficient");
    // Degree-3 polynomial: header plus four coefficient rows.
    assert_eq!(lines.len(), 5);
    for (power, line) in lines[1..].iter().enumerate() {
        let (p, coeff) = line.split_once(',').expect("two columns");
        assert_eq!(p.parse::<usize>().expect("power column"), power);
        assert!(coeff.contains('/'), "coefficients are p/q rationals: {coeff}");
    }
}

#[test]
fn poly_json_lists_exact_rational_coefficients() {
    let out = xell(&[
        "poly", "xell", "--system", "radial", "--ell", "1", "--n", "2", "--g", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).expect("json");
    assert_eq!(doc["system"], "radial");
    assert_eq!(doc["variable"], "eta");
    let coeffs = doc["coefficients"].as_array().expect("coefficient array");
    assert_eq!(coeffs.len(), 4);
    assert_eq!(coeffs[3], "1/2");
}

#[test]
fn potential_emits_plot_ready_csv() {
    let out = xell(&[
        "potential", "--system", "radial", "--ell", "1", "--g", "1", "--samples", "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).expect("utf-8");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,u");
    assert_eq!(lines.len(), 5);
    for line in &lines[1..] {
        let (x, u) = line.split_once(',').expect("two columns");
        x.parse::<f64>().expect("x column");
        u.parse::<f64>().expect("u column");
    }
}

#[test]
fn spectrum_report_compares_against_closed_forms() {
    let out = xell(&[
        "spectrum", "--system", "trig-dpt", "--ell", "1", "--g", "1", "--h", "2",
        "--levels", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = parse_report(&out);
    assert_eq!(report.command, "spectrum");
    assert_eq!(report.checks.len(), 2);
    assert!(report.checks.iter().all(|c| c.status == Status::Pass));
    assert!(report
        .checks
        .iter()
        .all(|c| c.detail.contains("closed form")));
}

#[test]
fn quick_suite_passes_and_reports_skips() {
    let out = xell(&["verify", "all", "--quick", "--jobs", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let report = parse_report(&out);
    assert!(report.checks.iter().any(|c| c.status == Status::Skip));
    assert!(report.checks.iter().all(|c| c.status != Status::Fail));
    assert_eq!(report.inputs["quick"], "true");
    assert_eq!(report.inputs["jobs"], "1");
}
