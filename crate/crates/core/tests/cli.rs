use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ttbar-scan"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("scan.toml");
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn point_prints_key_values() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["point", "--mass", "346", "--theta", "0.7", "--wgg", "1"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lookup = |key: &str| -> f64 {
        text.lines()
            .find_map(|l| l.strip_prefix(&format!("{key}=")))
            .unwrap_or_else(|| panic!("{key} missing"))
            .parse()
            .unwrap()
    };
    assert!((lookup("qmi") - 2.0).abs() < 1e-12);
    assert!((lookup("rec") - 1.0).abs() < 1e-12);
    assert!((lookup("cond_entropy") + 1.0).abs() < 1e-12);
    assert!(text.contains("closed_form_status=ok"));
    assert_eq!(text.lines().count(), 4 + 14 + 4);
}

#[test]
fn point_below_threshold_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["point", "--mass", "300", "--theta", "0.7", "--wgg", "1"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("threshold"));
}

#[test]
fn bad_config_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "mass_grid.min = 300\n");
    let o = run(&["--config", &cfg, "scan"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("mass_grid.min"));

    let cfg = write_config(dir.path(), "unknown_key = 1\n");
    assert_eq!(
        run(&["--config", &cfg, "scan"], dir.path()).status.code(),
        Some(1)
    );
    let missing = dir.path().join("absent.toml");
    let o = run(&["--config", missing.to_str().unwrap(), "scan"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn scan_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "output_dir = \"out\"\nmass_grid.count = 4\ntheta_grid.count = 3\nw_gg_list = [0.0, 1.0]\n",
    );
    let o = run(&["--config", &cfg, "scan"], dir.path());
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let csv = std::fs::read_to_string(dir.path().join("out/scan.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4 * 3 * 2 + 1);
    let summary = std::fs::read_to_string(dir.path().join("out/summary.txt")).unwrap();
    assert_eq!(summary, stdout(&o));
    assert!(summary.contains("violations=none"));
}

#[test]
fn audit_violation_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    // A tolerance tighter than double-precision roundoff makes the CCR audit fail.
    let cfg = write_config(
        dir.path(),
        "output_dir = \"out\"\nmass_grid.count = 4\ntheta_grid.count = 4\ntolerances.ccr = 1e-300\n",
    );
    let o = run(&["--config", &cfg, "scan"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("ccr_sum:"));
}

#[test]
fn figure_writes_named_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "output_dir = \"figs\"\nmass_grid.count = 3\ntheta_grid.count = 5\n",
    );
    let o = run(&["--config", &cfg, "figure", "--id", "9c"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let data = std::fs::read_to_string(dir.path().join("figs/fig_9c.csv")).unwrap();
    let mut lines = data.lines();
    assert_eq!(lines.next(), Some("theta,rec_m400,rec_m500,rec_m700"));
    assert_eq!(lines.count(), 5);

    let o = run(&["figure", "--id", "10"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}
