//! End-to-end tests of the binary: flags, config files, formats, exit
//! codes, and the CSV schemas.

use std::fs;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mobius-cs"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command failed: {:?}\nstderr: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Data rows of a CSV output (comments and header skipped), split on commas.
fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn f(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn trajectory_schema_and_values() {
    let text = stdout(&[
        "--command",
        "trajectory",
        "--profile",
        "const:0.5",
        "--phi-min",
        "0",
        "--phi-max",
        "12.566370614359172",
        "--steps",
        "3",
    ]);
    let header: Vec<&str> = text
        .lines()
        .find(|l| !l.starts_with('#'))
        .unwrap()
        .split(',')
        .collect();
    assert_eq!(header, ["phi", "x", "y", "z", "r", "l_prime"]);
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 3);
    let xs: Vec<f64> = rows.iter().map(|r| f(&r[1])).collect();
    assert!((xs[0] - 1.5).abs() <= 1e-12);
    assert!((xs[1] - 0.5).abs() <= 1e-12);
    assert!((xs[2] - 1.5).abs() <= 1e-12);
}

#[test]
fn trajectory_cylinder_and_sin2_endpoints() {
    let text = stdout(&[
        "--command",
        "trajectory",
        "--profile",
        "const:0",
        "--l",
        "1",
        "--phi-min",
        "0",
        "--phi-max",
        "6.283185307179586",
        "--steps",
        "2",
    ]);
    let rows = csv_rows(&text);
    // Endpoint rows identical except φ.
    assert_ne!(rows[0][0], rows[1][0]);
    for (k, (a, b)) in rows[0].iter().zip(&rows[1]).enumerate().skip(1) {
        assert!((f(a) - f(b)).abs() <= 1e-12, "col {k}");
    }

    let text = stdout(&[
        "--command",
        "trajectory",
        "--profile",
        "sin2",
        "--phi-min",
        "0",
        "--phi-max",
        "6.283185307179586",
        "--steps",
        "2",
    ]);
    let rows = csv_rows(&text);
    for k in [1, 2, 3, 5] {
        assert!((f(&rows[0][k]) - f(&rows[1][k])).abs() <= 1e-12, "col {k}");
    }
}

#[test]
fn sweep_normalized_is_flat() {
    let text = stdout(&["--command", "sweep", "--steps", "12"]);
    assert!(text.contains("# convention=normalized"));
    for row in csv_rows(&text) {
        assert!((f(&row[2]) - 0.5).abs() <= 1e-9, "d2J");
        assert!((f(&row[3]) - 0.5).abs() <= 1e-9, "d2phi");
        assert!((f(&row[4]) - 1.0).abs() <= 1e-9, "sum");
        assert!(f(&row[5]) >= f(&row[6]) - 1e-12, "heisenberg");
    }
}

#[test]
fn sweep_paper_literal_level_overrides() {
    for (lp, want) in [("1", 0.5), ("4", 3.5)] {
        let text = stdout(&[
            "--command",
            "sweep",
            "--convention",
            "paper",
            "--lp",
            lp,
            "--steps",
            "4",
        ]);
        assert!(text.contains("# convention=paper-literal"));
        for row in csv_rows(&text) {
            assert!((f(&row[4]) - want).abs() <= 1e-9, "lp={lp}: sum {}", row[4]);
        }
    }
}

#[test]
fn periodicity_schema_and_profile_behavior() {
    let text = stdout(&[
        "--command",
        "periodicity",
        "--profile",
        "const:0.5",
        "--phi-min",
        "0",
        "--phi-max",
        "1",
        "--steps",
        "1",
    ]);
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][0], "const:0.5");
    assert!((f(&rows[0][3]) - 0.547).abs() <= 1e-3);
    assert_eq!(rows[0][4], "false");
    assert!((f(&rows[1][3]) - 1.0).abs() <= 1e-12);
    assert_eq!(rows[1][4], "true");

    let text = stdout(&[
        "--command",
        "periodicity",
        "--profile",
        "const:0",
        "--phi-min",
        "0.5",
        "--phi-max",
        "1",
        "--steps",
        "1",
    ]);
    for row in csv_rows(&text) {
        assert_eq!(row[4], "true", "cylinder passes both periods");
    }

    let text = stdout(&[
        "--command",
        "periodicity",
        "--profile",
        "cos2",
        "--phi-min",
        "0",
        "--phi-max",
        "1",
        "--steps",
        "1",
        "--period",
        "2pi,4pi",
    ]);
    let rows = csv_rows(&text);
    assert_eq!(rows[0][4], "false");
    assert_eq!(rows[1][4], "true");
}

#[test]
fn json_format_is_parseable() {
    let text = stdout(&["--command", "sweep", "--steps", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert!(v[0]["d2J"].is_number());
}

#[test]
fn verify_passes_by_default_and_reports_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["--command", "verify", "--output", path.to_str().unwrap()]);
    assert!(out.status.success(), "verify should exit 0");
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    for key in [
        "eigenvalue_residuals",
        "poisson_checks",
        "discrepancies",
        "periodicity",
    ] {
        assert!(report[key].is_array(), "missing key {key}");
    }
    // Literal-reading flags are informational and must not fail the run.
    let flagged = report["discrepancies"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| {
            e["flags"]
                .as_array()
                .unwrap()
                .iter()
                .any(|f| f == "unitarity-violation")
        })
        .count();
    assert!(flagged > 0, "expected unitarity flags in the report");
}

#[test]
fn verify_fails_with_forced_narrow_window() {
    let out = run(&["--command", "verify", "--padding", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn config_file_drives_a_run_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    fs::write(
        &cfg,
        "# sweep configuration\ncommand=sweep\nsteps=5\nlp=1\nconvention=paper\n",
    )
    .unwrap();
    let text = stdout(&["--config", cfg.to_str().unwrap()]);
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 5);
    assert!((f(&rows[0][4]) - 0.5).abs() <= 1e-9);

    // A flag overrides the file value.
    let text = stdout(&["--config", cfg.to_str().unwrap(), "--lp", "4"]);
    assert!((f(&csv_rows(&text)[0][4]) - 3.5).abs() <= 1e-9);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["--command", "dance"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(
        run(&["--command", "sweep", "--profile", "const:1.2"])
            .status
            .code(),
        Some(2)
    );
    // Unknown config key.
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    fs::write(&cfg, "command=sweep\nwhat=ever\n").unwrap();
    assert_eq!(
        run(&["--config", cfg.to_str().unwrap()]).status.code(),
        Some(2)
    );
    // Missing config file.
    assert_eq!(
        run(&["--config", "/nonexistent/path.conf"]).status.code(),
        Some(2)
    );
}

#[test]
fn io_errors_exit_2() {
    let out = run(&[
        "--command",
        "sweep",
        "--steps",
        "2",
        "--output",
        "/nonexistent-dir/out.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn csv_fields_roundtrip_f64() {
    let text = stdout(&[
        "--command",
        "sweep",
        "--steps",
        "7",
        "--profile",
        "cos2",
        "--l",
        "0.8",
    ]);
    for row in csv_rows(&text) {
        for field in row {
            if field == "true" || field == "false" || field.starts_with("const") {
                continue;
            }
            let x: f64 = field.parse().unwrap();
            assert_eq!(format!("{x:.16e}"), field, "field must be full precision");
        }
    }
}
