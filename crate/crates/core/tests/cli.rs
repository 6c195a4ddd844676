use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn wavebound(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wavebound"))
        .arg("--out-dir")
        .arg(dir)
        .args(args)
        .env("WAVEBOUND_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn column(csv: &str, row: usize, name: &str) -> f64 {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let k = header.iter().position(|h| *h == name).unwrap_or_else(|| panic!("no column {name}"));
    lines.nth(row).unwrap().split(',').nth(k).unwrap().parse().unwrap()
}

#[test]
fn riemann_table_default() {
    let dir = tempfile::tempdir().unwrap();
    let out = wavebound(dir.path(), &["riemann-table"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(dir.path(), "riemann_table.csv");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "test,exact,davis_a,davis_b,toro,batten,einfeldt,bound_fail_mask");
    assert_eq!(lines.len(), 8);
    assert!(lines[6].starts_with("6,88.8686,-2.7238,83.2762,716.24"), "{}", lines[6]);
    assert!(lines[6].ends_with(",83.7136,89.9681,11010"), "{}", lines[6]);
}

#[test]
fn riemann_table_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("problems.cfg");
    fs::write(&cfg, "[problem]\nname = equal\nrho_l=1\nu_l=0.5\np_l=1\nrho_r=1\nu_r=0.5\np_r=1\n").unwrap();
    let out = wavebound(dir.path(), &["riemann-table", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = read(dir.path(), "riemann_table.csv");
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[0], "equal");
    assert!(row[1..7].iter().all(|v| *v == row[1]), "{row:?}");
    assert_eq!(row[7], "00000");

    fs::write(&cfg, "# nothing here\n").unwrap();
    let out = wavebound(dir.path(), &["riemann-table", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // vacuum-generating data is admissible per state but has no star state
    fs::write(&cfg, "[problem]\nrho_l=1\nu_l=-20\np_l=1\nrho_r=1\nu_r=20\np_r=1\n").unwrap();
    let out = wavebound(dir.path(), &["riemann-table", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn advect1d_runs() {
    let dir = tempfile::tempdir().unwrap();
    let out = wavebound(dir.path(), &["advect1d", "--beta", "1.4142135623730951", "--c", "0.7", "--t-out", "4"]);
    assert!(out.status.success());
    let norms = read(dir.path(), "norms.csv");
    assert!(norms.starts_with("beta,c,T,Linf,L1,qmax,qmin\n"));
    assert!(column(&norms, 0, "qmax") <= 1.0 + 1e-12);
    let profile = read(dir.path(), "profile.csv");
    assert!(profile.starts_with("x,q_numerical,q_exact\n"));
    assert_eq!(profile.lines().count(), 101);

    let out = wavebound(dir.path(), &["advect1d", "--beta", "upwind", "--c", "1", "--t-out", "1"]);
    assert!(out.status.success());
    assert_eq!(column(&read(dir.path(), "norms.csv"), 0, "Linf"), 0.0);
}

#[test]
fn instability_grows_on_finer_mesh() {
    let dir = tempfile::tempdir().unwrap();
    let out = wavebound(dir.path(), &["advect1d", "--beta", "1.4142135623730951", "--c", "0.71", "--cells", "200"]);
    assert!(out.status.success());
    let norms = read(dir.path(), "norms.csv");
    assert!(column(&norms, 0, "qmax") > 1.05, "{norms}");
    assert!(String::from_utf8_lossy(&out.stderr).contains("unstable"));
}

#[test]
fn flag_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(wavebound(dir.path(), &["advect1d", "--c", "-1"]).status.code(), Some(2));
    assert_eq!(wavebound(dir.path(), &["advect1d", "--beta", "nonsense"]).status.code(), Some(2));
    assert_eq!(wavebound(dir.path(), &["no-such-command"]).status.code(), Some(2));
    assert_eq!(wavebound(dir.path(), &["stability2d", "--beta", "-0.5"]).status.code(), Some(2));
    let bad_threads = Command::new(env!("CARGO_BIN_EXE_wavebound"))
        .args(["--out-dir", dir.path().to_str().unwrap(), "beta-curves"])
        .env("WAVEBOUND_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad_threads.status.code(), Some(2));
}

#[test]
fn beta_curves_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = wavebound(dir.path(), &["beta-curves", "--samples", "10", "--alpha", "2"]);
    assert!(out.status.success());
    let csv = read(dir.path(), "beta_curves.csv");
    assert!(csv.starts_with("c,beta_LW,beta_GU,beta_FO,beta_LF,beta_GC,beta_FTCS,beta_FA_2\n"));
    // rows are c = 0.1 .. 1.0
    assert_eq!(column(&csv, 4, "c"), 0.5);
    assert_eq!(column(&csv, 4, "beta_FO"), 1.25);
    for name in ["beta_LW", "beta_GU", "beta_FO", "beta_LF"] {
        assert_eq!(column(&csv, 9, name), 1.0);
    }
    assert!(column(&csv, 0, "beta_LF") > column(&csv, 1, "beta_LF"));
}

#[test]
fn stability2d_outputs_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["stability2d", "--beta", "1,2", "--force-alpha", "2", "--grid", "64", "--angles", "64"];
    assert!(wavebound(a.path(), &args).status.success());
    assert!(wavebound(b.path(), &args).status.success());
    for name in ["areas.csv", "map_beta=1.csv", "map_beta=2.pgm", "map_force_alpha=2.csv"] {
        assert_eq!(read(a.path(), name), read(b.path(), name), "{name}");
    }
    let areas = read(a.path(), "areas.csv");
    assert!(areas.starts_with("beta,area_fraction\n"));
    assert!(column(&areas, 0, "area_fraction") > column(&areas, 1, "area_fraction"));
    let pgm = read(a.path(), "map_beta=1.pgm");
    assert!(pgm.starts_with("P2\n64 64\n255\n"));
}

#[test]
fn one_d_limit_curves() {
    let dir = tempfile::tempdir().unwrap();
    let out = wavebound(dir.path(), &["stability1d", "--eps-samples", "5", "--c-resolution", "128"]);
    assert!(out.status.success());
    let csv = read(dir.path(), "stability1d.csv");
    // eps = 0.5
    assert_eq!(column(&csv, 2, "c_lim_under"), 0.5);
    assert!((column(&csv, 2, "c_lim_over_numeric") - 2.0 / 3.0).abs() <= 1.0 / 128.0);

    let out = wavebound(dir.path(), &["force-alpha", "--samples", "5", "--alpha-min", "1", "--alpha-max", "5"]);
    assert!(out.status.success());
    let csv = read(dir.path(), "force_alpha.csv");
    assert_eq!(column(&csv, 0, "c_lim"), 1.0);
    assert!((column(&csv, 1, "c_lim") - 3f64.sqrt() / 2.0).abs() < 1e-8);
}
