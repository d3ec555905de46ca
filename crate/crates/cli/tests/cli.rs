//! End-to-end tests that shell out to the built binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use vilenkin_core::kernels::KernelReport;

fn vilenkin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vilenkin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

fn read_csv_column(path: &Path, column: usize) -> Vec<String> {
    let text = fs::read_to_string(path).unwrap();
    text.lines()
        .skip(1)
        .map(|line| line.split(',').nth(column).unwrap().to_string())
        .collect()
}

#[test]
fn verify_block_identity_passes_with_json_report() {
    let out = vilenkin(&["verify", "eq3", "--m", "2,2,2,2", "--N", "4"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let reports: Vec<KernelReport> = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(reports.len(), 1);
    assert!(reports[0].pass);
    assert_eq!(reports[0].statement.id(), "eq3");
    assert!(stderr_of(&out).contains("PASS eq3"));
}

#[test]
fn verify_reports_roundtrip_through_json() {
    let out = vilenkin(&["verify", "lemma4", "--m", "2^5", "--N", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let reports: Vec<KernelReport> = serde_json::from_str(&text).unwrap();
    assert_eq!(reports.len(), 6); // full (k, l) grid at depth 3
    let again = serde_json::to_string_pretty(&reports).unwrap();
    assert_eq!(text.trim_end(), again);
}

#[test]
fn verify_structured_lower_bound() {
    let out = vilenkin(&["verify", "lemma2", "--m", "2^8", "--A", "4"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let reports: Vec<KernelReport> = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert!(reports[0].empirical_constant >= 1.0);
    assert!(stderr_of(&out).contains("PASS lemma2"));
}

#[test]
fn verify_remaining_statements_pass() {
    for (statement, extra) in [
        ("eq4", vec!["--N", "6"]),
        ("eq5", vec!["--N", "5", "--samples", "5"]),
        ("lemma3", vec!["--N", "5"]),
        ("shift", vec!["--N", "6"]),
        ("partition", vec!["--N", "5"]),
    ] {
        let mut args = vec!["verify", statement, "--m", "2^8"];
        args.extend(extra);
        let out = vilenkin(&args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{statement} stderr: {}",
            stderr_of(&out)
        );
    }
}

#[test]
fn degenerate_domination_order_exits_one() {
    // Below the first block order the dominating kernel sum vanishes
    // identically, so the verifier reports FAIL and the exit code is 1.
    let out = vilenkin(&["verify", "eq5", "--m", "3,2,4", "--N", "3", "--n", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let reports: Vec<KernelReport> = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert!(!reports[0].pass);
}

#[test]
fn usage_errors_exit_two() {
    let out = vilenkin(&["verify", "eq99", "--m", "2,2", "--N", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = vilenkin(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = vilenkin(&["verify", "eq3", "--m", "2,1,2", "--N", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = vilenkin(&["verify", "lemma2", "--m", "2^8"]); // missing --A
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn transform_roundtrips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("f.csv");
    let spectrum = dir.path().join("spectrum.csv");
    let back = dir.path().join("back.csv");

    let mut rows = vec!["point_encoding,re,im".to_string()];
    for i in 0..24 {
        rows.push(format!(
            "{i},{},{}",
            (i as f64 * 0.37).sin(),
            (i as f64 * 0.11).cos()
        ));
    }
    fs::write(&input, rows.join("\n") + "\n").unwrap();

    let out = vilenkin(&[
        "transform",
        "--m",
        "3,2,4",
        "--N",
        "3",
        "--input",
        input.to_str().unwrap(),
        "--output",
        spectrum.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));

    let out = vilenkin(&[
        "transform",
        "--m",
        "3,2,4",
        "--N",
        "3",
        "--inverse",
        "--input",
        spectrum.to_str().unwrap(),
        "--output",
        back.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));

    let original = read_csv_column(&input, 1);
    let recovered = read_csv_column(&back, 1);
    for (a, b) in original.iter().zip(&recovered) {
        let (a, b): (f64, f64) = (a.parse().unwrap(), b.parse().unwrap());
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn kernel_table_has_expected_values() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k2.csv");
    let out = vilenkin(&[
        "kernel",
        "--m",
        "2^3",
        "--N",
        "3",
        "--kind",
        "fejer",
        "--n",
        "2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    for re in read_csv_column(&path, 1) {
        let re: f64 = re.parse().unwrap();
        assert!((re - 0.5).abs() < 1e-12);
    }
}

#[test]
fn maximal_field_of_constant_function() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("one.csv");
    let output = dir.path().join("field.csv");
    let mut rows = vec!["point_encoding,re,im".to_string()];
    for i in 0..16 {
        rows.push(format!("{i},1,0"));
    }
    fs::write(&input, rows.join("\n") + "\n").unwrap();

    let out = vilenkin(&[
        "maximal",
        "--m",
        "2^4",
        "--N",
        "4",
        "--weight",
        "one",
        "--input",
        input.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    for value in read_csv_column(&output, 1) {
        let value: f64 = value.parse().unwrap();
        assert!((value - 15.0 / 16.0).abs() < 1e-12);
    }
    // Unsound truncation is a usage error.
    let out = vilenkin(&[
        "maximal",
        "--m",
        "2^4",
        "--N",
        "4",
        "--weight",
        "one",
        "--n-max",
        "8",
        "--input",
        input.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn atom_test_is_byte_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.csv");
    let second = dir.path().join("b.csv");
    for path in [&first, &second] {
        let out = vilenkin(&[
            "atom-test",
            "--m",
            "2^6",
            "--N",
            "4",
            "--samples",
            "20",
            "--seed",
            "7",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    }
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());

    let different = dir.path().join("c.csv");
    let out = vilenkin(&[
        "atom-test",
        "--m",
        "2^6",
        "--N",
        "4",
        "--samples",
        "20",
        "--seed",
        "8",
        "--output",
        different.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_ne!(fs::read(&first).unwrap(), fs::read(&different).unwrap());
}

#[test]
fn divergence_table_ratios_increase() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = vilenkin(&[
        "divergence",
        "--m",
        "2^12",
        "--nk-range",
        "1..5",
        "--weight",
        "one",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let header = fs::read_to_string(&path).unwrap();
    assert!(header.starts_with("n_k,q_nk,H12_norm,L12_integral,ratio"));
    let ratios: Vec<f64> = read_csv_column(&path, 4)
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    assert_eq!(ratios.len(), 5);
    for pair in ratios.windows(2) {
        assert!(
            pair[1] > pair[0],
            "ratios not strictly increasing: {ratios:?}"
        );
    }
}
