use rcqm::io::{load_complex, load_fields, save_complex};
use rcqm::VerificationReport;
use std::path::Path;
use std::process::{Command, Output};

fn rcqm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rcqm")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn report(path: &Path) -> VerificationReport {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn csv(path: &Path) -> Vec<Vec<f64>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn verify_su2_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = rcqm(&["verify", "--suite", "su2", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&out);
    assert!(r.pass && !r.checks.is_empty());
}

#[test]
fn mutated_poincare_fails_with_exit_1() {
    let o = rcqm(&["verify", "--suite", "poincare", "--mutate"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn config_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&rcqm(&["verify", "--suite", ""])), 3);
    assert_eq!(code(&rcqm(&["verify", "--suite", "nope"])), 3);
    assert_eq!(code(&rcqm(&["verify", "--suite", "su2", "--mass", "-2"])), 3);
    assert_eq!(code(&rcqm(&["evolve", "--t", "1"])), 3);
    let cfg = dir.path().join("run.ini");
    std::fs::write(&cfg, "command = verify\nsuite = su2\ncolour = blue\n").unwrap();
    assert_eq!(code(&rcqm(&["--config", cfg.to_str().unwrap()])), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_rcqm"))
        .args(["verify", "--suite", "su2"])
        .env("RCQM_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn io_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.ini");
    assert_eq!(code(&rcqm(&["--config", missing.to_str().unwrap()])), 2);
    let bad_out = dir.path().join("no/such/dir/r.json");
    assert_eq!(code(&rcqm(&["verify", "--suite", "su2", "--out", bad_out.to_str().unwrap()])), 2);
}

#[test]
fn config_file_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let cfg = dir.path().join("run.ini");
    std::fs::write(&cfg, format!("# algebra only\ncommand = verify\nsuite = bogus\nout = {}\n", out.display())).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_rcqm"))
        .args(["--config", cfg.to_str().unwrap(), "verify", "--suite", "clifford"])
        .env("RCQM_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(report(&out).suite, "clifford");
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = rcqm(&["verify", "--suite", "transitions,spinors", "--seed", "7", "--out", p.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn evolve_keeps_p0_constant() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = rcqm(&[
        "evolve", "--rep", "rcqm", "--spin", "1/2,1/2", "--grid", "256", "--box", "40", "--t", "5", "--snapshots", "6",
        "--out-dir", d, "--k0", "1.5",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let header = std::fs::read_to_string(dir.path().join("conserved.csv")).unwrap();
    assert!(header.starts_with("t,norm,P0,P1,P2,P3,mean_s3\n"));
    let rows = csv(&dir.path().join("conserved.csv"));
    assert_eq!(rows.len(), 6);
    for r in &rows {
        assert!(((r[2] - rows[0][2]) / rows[0][2]).abs() < 1e-11);
        assert!(r[2] >= r[1]);
    }
    assert!(dir.path().join("snap_0005.rcqm").exists());
    assert!(report(&dir.path().join("report.json")).pass);
}

#[test]
fn zero_time_snapshot_equals_input() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first");
    let o = rcqm(&["evolve", "--rep", "fw", "--grid", "32", "--t", "1", "--snapshots", "2", "--out-dir", first.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let input = first.join("snap_0001.rcqm");
    let second = dir.path().join("second");
    let o = rcqm(&[
        "evolve", "--rep", "fw", "--grid", "32", "--t", "0", "--snapshots", "1", "--input", input.to_str().unwrap(),
        "--out-dir", second.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(load_complex(&second.join("snap_0000.rcqm")).unwrap(), load_complex(&input).unwrap());

    // round trip through the library writer too
    let g = load_complex(&input).unwrap();
    let copy = dir.path().join("copy.rcqm");
    save_complex(&copy, &g).unwrap();
    assert_eq!(std::fs::read(&copy).unwrap(), std::fs::read(&input).unwrap());
}

#[test]
fn dirac_n8_equivalence_column_below_tol() {
    let dir = tempfile::tempdir().unwrap();
    let o = rcqm(&[
        "evolve", "--rep", "dirac", "--spin", "1,0,1,0", "--grid", "64", "--box", "20", "--t", "2", "--snapshots", "3",
        "--equivalence", "--tol", "1e-10", "--out-dir", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows = csv(&dir.path().join("equivalence.csv"));
    assert_eq!(rows.len(), 3);
    for r in rows {
        assert!(r[1] < 1e-10 && r[2] < 1e-10, "{r:?}");
    }
}

#[test]
fn maxwell_massless_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = rcqm(&[
        "maxwell", "--mass", "0", "--grid", "16,16", "--box", "6.283185307179586,7", "--t", "3", "--snapshots", "4",
        "--out-dir", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&dir.path().join("report.json"));
    assert!(r.checks.iter().any(|c| c.id == "plane_wave" && c.pass));
    assert!(dir.path().join("sign_errata.json").exists());
    let f = load_fields(&dir.path().join("fields_0003.rcqm")).unwrap();
    assert_eq!(f.dims, [16, 16, 1]);
    let rows = csv(&dir.path().join("constraints.csv"));
    for r in &rows {
        assert!((r[3] - rows[0][3]).abs() <= 1e-10 * rows[0][3]);
    }
}

#[test]
fn maxwell_massive_reports_failure() {
    let dir = tempfile::tempdir().unwrap();
    let o = rcqm(&[
        "maxwell", "--mass", "1", "--grid", "8,8", "--box", "6.283185307179586,7", "--t", "5", "--snapshots", "3",
        "--out-dir", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    let r = report(&dir.path().join("report.json"));
    assert!(!r.pass);
    assert!(r.checks.iter().any(|c| c.id == "constraints" && !c.pass));
}
