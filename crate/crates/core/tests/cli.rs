use std::process::{Command, Output};

use susy_entangle::TrajectoryRecord;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_susy-entangle")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn run_writes_a_readable_trajectory() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("n5.csv");
    let out = cli(&["run", "--photons", "5", "--in-b", "1", "--g", "0.5", "--steps", "101", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("survival_gt="));

    let record = TrajectoryRecord::parse_csv(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(record.rows.len(), 101);
    assert_eq!(record.spec.photons_in_b(), 1);
    let last = record.rows.last().unwrap();
    assert!((last.gt - 2.0).abs() < 1e-12);
    assert!((last.t - 4.0).abs() < 1e-12);
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.csv");
    let p = path.to_str().unwrap();
    assert_eq!(code(&cli(&["run", "--photons", "3", "--in-b", "4", "--out", p])), 2);
    assert_eq!(code(&cli(&["run", "--photons", "3", "--in-b", "1"])), 2);
    assert_eq!(code(&cli(&["run", "--photons", "0", "--in-b", "0", "--out", p])), 2);
    assert_eq!(code(&cli(&["run", "--photons", "3", "--in-b", "1", "--steps", "1", "--out", p])), 2);
    assert_eq!(code(&cli(&["run", "--photons", "three", "--in-b", "1", "--out", p])), 2);
    assert_eq!(code(&cli(&["frobnicate"])), 2);
    assert!(!path.exists());
}

#[test]
fn unwritable_output_exits_with_four() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("x.csv");
    let out = cli(&["run", "--photons", "3", "--in-b", "0", "--steps", "11", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn spectrum_lists_paired_levels() {
    let out = cli(&["spectrum", "--photons", "5", "--omega", "1", "--g", "-1"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("lambda,energy,multiplicity"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 3);
    let w = 4.0 * 7f64.sqrt();
    for (row, lambda) in rows.iter().zip([-w, 0.0, w]) {
        assert!((row[0] - lambda).abs() < 1e-12);
        assert!((row[1] - (5.0 - lambda)).abs() < 1e-12);
        assert_eq!(row[2], 2.0);
    }
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("cfg.csv");
    let cfg = dir.path().join("run.conf");
    std::fs::write(
        &cfg,
        format!("# N=9 short run\nphotons = 9\nin-b = 3\nsteps = 51\ngt_max = 0.5\nout = {}\n", out_path.display()),
    )
    .unwrap();
    let out = cli(&["run", "--config", cfg.to_str().unwrap(), "--in-b", "4"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let record = TrajectoryRecord::parse_csv(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(record.spec.photons_in_b(), 4);
    assert_eq!(record.rows.len(), 51);

    std::fs::write(&cfg, "photons = 9\ncolour = blue\n").unwrap();
    assert_eq!(code(&cli(&["run", "--config", cfg.to_str().unwrap()])), 2);
    let absent = dir.path().join("nope.conf");
    assert_eq!(code(&cli(&["run", "--config", absent.to_str().unwrap()])), 4);
}

#[test]
fn oracle_cross_check_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("o.csv");
    let out = cli(&["run", "--photons", "7", "--in-b", "2", "--g", "-0.8", "--omega", "1.5", "--steps", "201", "--oracle", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}
