//! End-to-end tests of the `helm2d` binary: exit codes, output files, and
//! byte-level determinism of reruns.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn helm2d(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_helm2d"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary should launch")
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("reading {name}: {e}"))
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("config.toml");
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn selftest_passes_and_reruns_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let out = helm2d(tmp.path(), &["selftest", "--no-timestamp", "--out-dir", "run1"]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(
        out.status.code() == Some(0),
        "selftest failed: {stdout}\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout.contains("PASS negative-control-detects-corruption"));
    assert!(!stdout.contains("FAIL"));

    let out2 = helm2d(tmp.path(), &["selftest", "--no-timestamp", "--out-dir", "run2"]);
    assert_eq!(out2.status.code(), Some(0));
    assert_eq!(
        read(tmp.path(), "run1/summary.json"),
        read(tmp.path(), "run2/summary.json"),
        "summary.json must be byte-identical across reruns"
    );
}

#[test]
fn oracle_eigs_is_deterministic_and_finds_the_reference_count() {
    let tmp = tempfile::tempdir().unwrap();
    for run in ["a", "b"] {
        let out = helm2d(tmp.path(), &["oracle-eigs", "--no-timestamp", "--out-dir", run]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let csv = read(tmp.path(), "a/eigs_oracle.csv");
    assert_eq!(csv, read(tmp.path(), "b/eigs_oracle.csv"));
    // Default problem: 9 eigenvalues in the window (7 resonances + 2
    // fictitious entries from the exterior factor).
    assert_eq!(csv.lines().count(), 1 + 9);
    assert!(csv.lines().next().unwrap() == "re_omega,im_omega,mode,multiplicity,kind");
    assert_eq!(csv.matches("fictitious").count(), 2);
}

#[test]
fn ssm_eigs_pairs_the_two_formulations_on_a_small_window() {
    let tmp = tempfile::tempdir().unwrap();
    // One isolated eigenvalue (the lowest symmetric resonance) in a tight
    // window keeps the run fast.
    let cfg = write_config(
        tmp.path(),
        r#"
[geometry]
nodes = 32

[window]
re_min = 1.0
re_max = 1.25
im_min = -0.35
im_max = -0.15

[ssm]
nodes_per_side = 12
tiles_re = 1
tiles_im = 1
"#,
    );
    let out = helm2d(
        tmp.path(),
        &["ssm-eigs", "--no-timestamp", "--config", &cfg, "--out-dir", "out"],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let bm = read(tmp.path(), "out/eigs_bm.csv");
    let mixed = read(tmp.path(), "out/eigs_mixed.csv");
    let pairing = read(tmp.path(), "out/pairing.csv");
    assert_eq!(bm.lines().count(), 2, "one eigenvalue expected:\n{bm}");
    assert_eq!(mixed.lines().count(), 2);
    assert_eq!(pairing.lines().count(), 2);
    let row: Vec<&str> = pairing.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row.len(), 5);
    // Matched row: all five fields populated, the two sides close together
    // and near the known resonance 1.1155 - 0.2396i (coarse grid, loose tol).
    let re_bm: f64 = row[0].parse().unwrap();
    let im_bm: f64 = row[1].parse().unwrap();
    let dist: f64 = row[4].parse().unwrap();
    assert!((re_bm - 1.1155).abs() < 5e-3, "re {re_bm}");
    assert!((im_bm + 0.2396).abs() < 5e-3, "im {im_bm}");
    assert!(dist < 1e-6, "formulations disagree by {dist}");

    let summary = read(tmp.path(), "out/summary.json");
    assert!(summary.contains("\"bijective\": true"));
}

#[test]
fn single_formulation_run_writes_only_its_own_files() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        r#"
[geometry]
nodes = 32

[window]
re_min = 1.0
re_max = 1.25
im_min = -0.35
im_max = -0.15

[ssm]
nodes_per_side = 12
tiles_re = 1
tiles_im = 1
"#,
    );
    let out = helm2d(
        tmp.path(),
        &[
            "ssm-eigs",
            "--formulation",
            "mixed",
            "--no-timestamp",
            "--config",
            &cfg,
            "--out-dir",
            "out",
        ],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(tmp.path().join("out/eigs_mixed.csv").exists());
    assert!(!tmp.path().join("out/eigs_bm.csv").exists());
    assert!(!tmp.path().join("out/pairing.csv").exists());
}

#[test]
fn scatter_writes_a_full_grid_with_near_boundary_rows() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        r#"
[geometry]
nodes = 64

[scatter]
grid_nx = 7
grid_ny = 7
x_range = [-2.0, 2.0]
y_range = [-2.0, 2.0]
"#,
    );
    let out = helm2d(
        tmp.path(),
        &["scatter", "--no-timestamp", "--config", &cfg, "--out-dir", "out"],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let field = read(tmp.path(), "out/field.csv");
    let lines: Vec<&str> = field.lines().collect();
    assert_eq!(lines.len(), 1 + 49);
    assert_eq!(
        lines[0],
        "x,y,region,re_u_bm,im_u_bm,re_u_mixed,im_u_mixed,abs_diff"
    );
    let mut regions = std::collections::BTreeSet::new();
    for row in &lines[1..] {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 8, "bad row {row}");
        regions.insert(fields[2].to_string());
        if fields[2] == "near" {
            assert!(fields[3..].iter().all(|f| f.is_empty()));
        } else {
            let diff: f64 = fields[7].parse().unwrap();
            assert!(diff < 1e-6, "formulations disagree at {row}");
        }
    }
    // A ±2 grid over the unit circle sees all three regions; the exact 7×7
    // lattice contains the origin (inside) and corners (outside).
    assert!(regions.contains("inside"), "regions: {regions:?}");
    assert!(regions.contains("outside"));
}

#[test]
fn invalid_inputs_exit_with_code_one() {
    let tmp = tempfile::tempdir().unwrap();
    // Odd node count.
    let cfg = write_config(tmp.path(), "[geometry]\nnodes = 33\n");
    let out = helm2d(tmp.path(), &["oracle-eigs", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(1));

    // Unknown key.
    let cfg = write_config(tmp.path(), "[geometry]\nshape = \"circle\"\n");
    let out = helm2d(tmp.path(), &["oracle-eigs", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid configuration"));

    // Inverted window.
    let cfg = write_config(tmp.path(), "[window]\nim_min = 0.5\nim_max = -0.5\n");
    let out = helm2d(tmp.path(), &["oracle-eigs", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(1));

    // Oracle demands circle geometry.
    let cfg = write_config(tmp.path(), "[geometry]\nkind = \"star\"\n");
    let out = helm2d(tmp.path(), &["oracle-eigs", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(1));

    // Unknown subcommand / bad flag are argument errors.
    let out = helm2d(tmp.path(), &["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));
    let out = helm2d(tmp.path(), &["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn io_failures_exit_with_code_three() {
    let tmp = tempfile::tempdir().unwrap();
    // A config path that does not exist is an I/O error…
    let out = helm2d(
        tmp.path(),
        &["oracle-eigs", "--config", "does-not-exist.toml"],
    );
    assert_eq!(out.status.code(), Some(3));

    // …and so is an output directory blocked by an existing file.
    fs::write(tmp.path().join("blocked"), "file").unwrap();
    let out = helm2d(tmp.path(), &["oracle-eigs", "--out-dir", "blocked"]);
    assert_eq!(out.status.code(), Some(3));
}
