//! End-to-end checks of the binary: report shape, file round trips, exit
//! codes.

use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn intersub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intersub"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = intersub(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn degree_of_catalog_square_gbit() {
    let r = report(&["degree", "--measurement", "square-gbit"]);
    assert_eq!(r["command"], "degree");
    assert_eq!(r["value"], "1");
    assert_eq!(r["dimension_convention"], "linear = affine-hull + 1");
    assert!(r["witnesses"]["joint"].is_object());
    assert!(r["guards"]["degree_outcomes"].is_number());
}

#[test]
fn export_then_recompute_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let r = report(&["catalog", "export", "fivedim-es-ext", "--dir", d]);
    assert_eq!(r["command"], "catalog export");
    let model = Path::new(d).join("fivedim-es-ext.model.json");
    let meas = Path::new(d).join("fivedim-es-ext.measurement.json");
    assert!(model.exists() && meas.exists());

    let r = report(&[
        "cis-degree",
        "--model",
        model.to_str().unwrap(),
        "--measurement",
        meas.to_str().unwrap(),
    ]);
    assert_eq!(r["value"], "0");
    let partition = r["witnesses"]["partition"].as_array().unwrap();
    assert_eq!(partition.len(), 2);

    let r = report(&[
        "extremal",
        "--model",
        model.to_str().unwrap(),
        "--measurement",
        meas.to_str().unwrap(),
    ]);
    assert_eq!(r["value"], true);
}

#[test]
fn quantum_subcommands_on_exported_povm() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    report(&["catalog", "export", "qubit-four-halves", "--dir", d]);
    let povm = Path::new(d).join("qubit-four-halves.povm.json");
    let povm = povm.to_str().unwrap();

    assert_eq!(report(&["quantum", "is-pvm", "--povm", povm])["value"], false);
    assert_eq!(
        report(&["quantum", "intersubjective", "--povm", povm])["value"],
        true
    );
    assert_eq!(report(&["quantum", "extremal", "--povm", povm])["value"], false);
    let r = report(&["quantum", "qubit-degree", "--lambda", "0.6,0,0"]);
    assert_eq!(r["value"], 0.36);
}

#[test]
fn coin_toss_and_classical_degree() {
    let r = report(&["coin-toss", "--weights", "3/4,1/8,1/8"]);
    assert_eq!(r["value"], "1/2");
    // boolean outcomes do not affect the exit code
    let r = report(&["classical-check", "--model", "square-gbit"]);
    assert_eq!(r["value"], false);
}

#[test]
fn random_generators_are_seeded() {
    let a = report(&["random", "model", "--seed", "5", "--dim", "2", "--vertices", "6"]);
    let b = report(&["random", "model", "--seed", "5", "--dim", "2", "--vertices", "6"]);
    assert_eq!(a["model"], b["model"]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    std::fs::write(&path, serde_json::to_string(&a["model"]).unwrap()).unwrap();
    let r = report(&[
        "random",
        "measurement",
        "--model",
        path.to_str().unwrap(),
        "--seed",
        "9",
        "--outcomes",
        "3",
    ]);
    assert!(r["measurement"]["labels"].as_array().unwrap().len() == 3);
}

#[test]
fn exit_codes() {
    // unknown subcommand: usage error -> 2
    let out = intersub(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    // invalid input file -> 2
    let out = intersub(&["degree", "--measurement", "/definitely/not/here.json"]);
    assert_eq!(out.status.code(), Some(2));
    // guard exceeded -> 3
    let out = intersub(&["random", "model", "--seed", "1", "--dim", "9", "--vertices", "5"]);
    assert_eq!(out.status.code(), Some(3));
    // user-tightened outcome guard -> 3
    let out = intersub(&[
        "degree",
        "--measurement",
        "square-gbit",
        "--max-outcomes",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn quiet_suppresses_witnesses() {
    let r = report(&["degree", "--measurement", "square-gbit", "--quiet"]);
    assert!(r.get("witnesses").is_none());
    assert_eq!(r["value"], "1");
}

#[test]
fn rays_and_tomo_check() {
    let r = report(&["rays", "--model", "square-gbit"]);
    assert_eq!(r["value"], "4");
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    report(&["catalog", "export", "square-gbit", "--dir", d]);
    let meas = Path::new(d).join("square-gbit.measurement.json");
    let r = report(&[
        "tomo-check",
        "--model",
        "square-gbit",
        "--measurement",
        meas.to_str().unwrap(),
    ]);
    // the mixture alone does not separate the square
    assert_eq!(r["value"], false);
}
