//! Command-line contract: subcommands, artifacts, exit codes.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use sha2::{Digest, Sha256};
use spincat::runner::CSV_HEADER;
use spincat::Scenario;

fn spincat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spincat")).args(args).output().expect("spawn spincat")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_scenario(dir: &Path, name: &str, s: &Scenario) -> String {
    let path = dir.join(format!("{name}.toml"));
    fs::write(&path, s.to_toml_string().unwrap()).unwrap();
    path.to_string_lossy().into_owned()
}

fn short(mut s: Scenario, name: &str) -> Scenario {
    s.name = name.into();
    s.evolution.t_final = 0.5;
    s.electrostatics = None;
    s
}

#[test]
fn preset_hashes_are_pinned() {
    let pinned = [
        ("fig2", "e414b8c380f4a1dd61697c4e0ca0c07318f08d0ee631ffe783adbdc2ae2ededa"),
        ("fig3", "7d69edb36f911e117b4991c196edb613d4057aad4377736a31f869dc5c597ec7"),
        ("fig4", "5b87c61e8382dd5593dd7504a26a8e50db9e3a28ad7621afd149811776537c33"),
    ];
    for (name, hash) in pinned {
        assert_eq!(Scenario::preset(name).unwrap().content_hash().unwrap(), hash, "{name}");
        let printed = spincat(&["preset", name]);
        assert!(printed.status.success());
        assert_eq!(hex::encode(Sha256::digest(&printed.stdout)), hash);
    }
}

#[test]
fn oracle_table_is_deterministic() {
    let a = spincat(&["oracle"]);
    let b = spincat(&["oracle"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let row = text.lines().find(|l| l.starts_with("40.000,")).unwrap();
    let slope: f64 = row.split(',').nth(5).unwrap().parse().unwrap();
    assert!((slope - 0.2526).abs() < 5e-4);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("oracle.csv");
    let o = spincat(&["oracle", "--gamma", "0,40", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), 3);
}

#[test]
fn validate_reports_errors_and_warnings() {
    let dir = tempfile::tempdir().unwrap();
    let ok = spincat(&["validate", "--scenario", "fig2"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok).trim(), "ok");

    let mut bad = Scenario::fig2();
    bad.evolution.dt = 0.1;
    let o = spincat(&["validate", "--scenario", &write_scenario(dir.path(), "bad", &bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("dt·ω₀ exceeds bound"));

    let mut detuned = Scenario::fig2();
    detuned.drive.omega *= 1.05;
    let o = spincat(&["validate", "--scenario", &write_scenario(dir.path(), "detuned", &detuned)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("warning: drive.omega_rad_per_ps"));

    let garbled = dir.path().join("garbled.toml");
    fs::write(&garbled, "name = 3\n[grid]\nextent_nm = \"wide\"\n").unwrap();
    assert_eq!(spincat(&["validate", "--scenario", garbled.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn run_writes_schema_conformant_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = short(Scenario::fig2(), "short");
    let path = write_scenario(dir.path(), "short", &scenario);
    let out = dir.path().join("out");
    let o = spincat(&["run", "--scenario", &path, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    let csv = fs::read_to_string(out.join("timeseries.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
    let rows: Vec<&str> = lines.collect();
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(rows.len() as u64, summary["samples"].as_u64().unwrap());
    assert!(rows.iter().all(|r| r.split(',').count() == CSV_HEADER.len()));

    let echo = fs::read(out.join("scenario.toml")).unwrap();
    assert_eq!(summary["content_hash"].as_str().unwrap(), hex::encode(Sha256::digest(&echo)));
    for f in ["density_up.csv", "density_down.csv", "density_axes.json"] {
        assert!(out.join(f).exists(), "{f}");
    }
    assert_eq!(summary["flags"]["opposite_displacements"], serde_json::Value::Bool(true));
}

#[test]
fn run_many_uses_disjoint_directories() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_scenario(dir.path(), "a", &short(Scenario::fig2(), "a"));
    let b = write_scenario(dir.path(), "b", &short(Scenario::fig4(), "b"));
    let out = dir.path().join("sweep");
    let o = Command::new(env!("CARGO_BIN_EXE_spincat"))
        .args(["run", "--scenario", &a, "--scenario", &b, "--out", out.to_str().unwrap()])
        .env("SPINCAT_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let fig4: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("b/summary.json")).unwrap()).unwrap();
    assert_eq!(fig4["flags"]["single_cs"], serde_json::Value::Bool(true));
    assert!(out.join("a/timeseries.csv").exists());
}

#[test]
fn exit_codes() {
    assert_eq!(spincat(&["run", "--scenario", "fig9", "--out", "/nonexistent"]).status.code(), Some(2));
    assert_eq!(spincat(&["frobnicate"]).status.code(), Some(2));

    // a box too small for the trap ground state overflows at once
    let dir = tempfile::tempdir().unwrap();
    let mut cramped = short(Scenario::fig2(), "cramped");
    cramped.grid.extent_nm = 200.0;
    cramped.grid.n_points = 512;
    let path = write_scenario(dir.path(), "cramped", &cramped);
    let o = spincat(&["run", "--scenario", &path, "--out", dir.path().join("o").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("domain overflow"));
}

#[test]
fn relax_and_poisson() {
    let o = spincat(&["relax", "--scenario", "fig4"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let shift = r["soi_shift_mev"].as_f64().unwrap();
    assert!((shift - 0.147).abs() < 2e-3, "{shift}");

    let dir = tempfile::tempdir().unwrap();
    let o = spincat(&["poisson", "--cell-nm", "10", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("poisson.json")).unwrap()).unwrap();
    assert!(summary["residual"].as_f64().unwrap() < 1e-10);
    let rows = fs::read_to_string(dir.path().join("phi.csv")).unwrap();
    assert_eq!(rows.lines().count() as u64, summary["nz"].as_u64().unwrap());
}
