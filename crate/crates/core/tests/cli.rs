//! End-to-end tests of the compiled binary: output formats, determinism,
//! threshold values, and exit codes.

use dicke2::cli::ROW_FIELDS;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dicke2"))
        .args(args)
        .output()
        .expect("binary failed to launch")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout not UTF-8")
}

#[test]
fn figure_one_emits_the_full_csv_grid() {
    let out = run(&["figure", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), ROW_FIELDS.join(","));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 300);
    for row in &rows {
        assert_eq!(row.split(',').count(), ROW_FIELDS.len());
        for field in row.split(',') {
            field.parse::<f64>().expect("non-numeric CSV field");
        }
    }
    let first: f64 = rows[0].split(',').next().unwrap().parse().unwrap();
    let last: f64 = rows[299].split(',').next().unwrap().parse().unwrap();
    assert!((first - 0.01).abs() < 1e-12);
    assert!((last - 2.0).abs() < 1e-12);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = [
        "sweep",
        "--scenario",
        "coherent",
        "--start",
        "0.5",
        "--stop",
        "1.5",
        "--steps",
        "7",
        "--solver",
        "both",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn threshold_prints_the_classical_boundary() {
    let out = run(&[
        "threshold",
        "--scenario",
        "classical-squeezed",
        "--start",
        "0.1",
        "--stop",
        "1.0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let x: f64 = stdout_of(&out).trim().parse().unwrap();
    assert!((x - 0.5).abs() < 2e-6, "threshold {x}");
}

#[test]
fn state_prints_the_reference_point() {
    let out = run(&["state", "--scenario", "coherent", "--omega", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let values: Vec<f64> = lines
        .next()
        .unwrap()
        .split(',')
        .map(|f| f.parse().unwrap())
        .collect();
    let field = |name: &str| values[header.iter().position(|h| *h == name).unwrap()];
    assert!((field("rho_ee") - 1.0 / 11.0).abs() < 1e-10);
    assert!((field("measure_e") - 1.0 / 11.0).abs() < 1e-10);
    assert!((field("rho_ss") - 3.0 / 11.0).abs() < 1e-10);
}

#[test]
fn json_lines_carry_named_fields() {
    let out = run(&[
        "state",
        "--scenario",
        "classical-squeezed",
        "--n-ph",
        "0.25",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let line = text.lines().next().unwrap();
    assert!(line.starts_with('{') && line.ends_with('}'));
    for name in ROW_FIELDS {
        assert!(line.contains(&format!("\"{name}\":")), "missing {name}");
    }
    let eg = line
        .split("\"rho_eg\":")
        .nth(1)
        .unwrap()
        .split([',', '}'])
        .next()
        .unwrap();
    let eg: f64 = eg.parse().unwrap();
    assert!((eg - 2.0 / 21.0).abs() < 1e-10);
}

#[test]
fn output_flag_writes_the_file_instead_of_stdout() {
    let path = std::env::temp_dir().join("dicke2_cli_test_sweep.csv");
    let _ = std::fs::remove_file(&path);
    let out = run(&[
        "sweep",
        "--scenario",
        "quantum-squeezed",
        "--start",
        "0.1",
        "--stop",
        "1.0",
        "--steps",
        "4",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.lines().count(), 5);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn usage_errors_exit_with_code_one() {
    // Unknown flag (clap).
    assert_eq!(run(&["sweep", "--no-such-flag"]).status.code(), Some(1));
    // Preset index out of range (clap value parser).
    assert_eq!(run(&["figure", "5"]).status.code(), Some(1));
    // Analytic solver has no combined-scenario closed form.
    let out = run(&[
        "sweep",
        "--scenario",
        "combined",
        "--start",
        "0.1",
        "--stop",
        "1.0",
        "--steps",
        "3",
        "--solver",
        "analytic",
    ]);
    assert_eq!(out.status.code(), Some(1));
    // A sweep needs at least two grid points.
    let out = run(&[
        "sweep",
        "--scenario",
        "coherent",
        "--start",
        "0.1",
        "--stop",
        "1.0",
        "--steps",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    // --m-value requires --m-mode custom.
    let out = run(&[
        "state",
        "--scenario",
        "classical-squeezed",
        "--m-value",
        "0.3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    // Out-of-bounds physical parameter.
    let out = run(&["state", "--scenario", "quantum-squeezed", "--n-ph", "-0.5"]);
    assert_eq!(out.status.code(), Some(1));
    // Help is not an error.
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn numerical_failures_exit_with_code_two() {
    // Both brackets lie in the separable region: no sign change to bisect.
    let out = run(&[
        "threshold",
        "--scenario",
        "classical-squeezed",
        "--start",
        "0.6",
        "--stop",
        "1.0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn self_check_reports_success() {
    let out = run(&["check"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("self-check passed"));
    assert!(text.lines().filter(|l| l.starts_with("ok ")).count() >= 10);
}
