use std::fs;
use std::process::{Command, Output};

use hyperzero_cli::polys_from_json;
use hyperzero_core::family;
use hyperzero_core::FamilyParams;
use serde_json::{json, Value};

fn hyperzero(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperzero"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn gen_writes_string_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gen.json");
    let out = hyperzero(&["gen", "--n", "2", "--r", "1", "--m-max", "2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], "hyperzero/1");
    assert_eq!(v["result"]["polynomials"], json!([["1"], ["2", "-1"], ["3", "-4", "1"]]));
}

#[test]
fn gen_round_trips_large_coefficients() {
    let out = hyperzero(&["gen", "--n", "5", "--r", "2", "--m-max", "80"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let back = polys_from_json(&v["result"]["polynomials"]).unwrap();
    assert_eq!(back, family::generate(FamilyParams::new(5, 2).unwrap(), 80));
}

#[test]
fn curve_csv_is_increasing() {
    let out = hyperzero(&["curve", "--n", "3", "--r", "1", "--samples", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(!text.contains('\r'));
    assert!(text.starts_with("theta,phi,z,A,B,t0_ratio\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 5);
    assert!(rows.windows(2).all(|w| w[1][2] > w[0][2]));
}

#[test]
fn curve_two_samples() {
    let out = hyperzero(&["curve", "--n", "2", "--r", "3", "--samples", "2", "--figure"]);
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 2);
    assert!(rows[1][1] > rows[0][1]);
}

#[test]
fn figure_data_shapes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.csv");
    let p31 = FamilyParams::new(3, 1).unwrap();
    hyperzero_cli::emit_figure_data(p31, 2000, &path).unwrap();
    let rows = csv_rows(&fs::read_to_string(&path).unwrap());
    let last = rows.last().unwrap()[1];
    assert!(last < 27.0 / 4.0 && last > 6.7, "{last}");

    let p32 = FamilyParams::new(3, 2).unwrap();
    hyperzero_cli::emit_figure_data(p32, 2000, &path).unwrap();
    let rows = csv_rows(&fs::read_to_string(&path).unwrap());
    assert!(rows.last().unwrap()[1] > 1e3);
    assert!(hyperzero_cli::emit_figure_data(p32, 1, &path).is_err());
}

#[test]
fn expsum_prints_sign() {
    let out = hyperzero(&["expsum", "--n", "5", "--h", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "+1\n");
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--n", "3", "--r", "2", "--m-max", "25", "--jobs", "4"];
    let a = hyperzero(&args);
    let b = hyperzero(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn qroots_reports_trivial_pair() {
    let out = hyperzero(&["qroots", "--n", "4", "--r", "3", "--theta", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["roots"].as_array().unwrap().len(), 4);
    assert_eq!(v["result"]["on_circle_indices"], json!([0, 1]));
    let re = v["result"]["roots"][0][0].as_f64().unwrap();
    assert!((re - 0.5f64.cos()).abs() < 1e-12);
}

#[test]
fn crosscheck_and_roots() {
    let out = hyperzero(&["crosscheck", "--n", "3", "--r", "1", "--m", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["count"], 10);

    let out = hyperzero(&["roots", "--n", "1", "--r", "2", "--m", "4"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let mids: Vec<f64> = v["result"]["roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["midpoint"].as_f64().unwrap())
        .collect();
    let s5 = 5f64.sqrt();
    assert!((mids[0] - (3.0 - s5) / 2.0).abs() < 1e-10);
    assert!((mids[1] - (3.0 + s5) / 2.0).abs() < 1e-10);
}

#[test]
fn exit_codes() {
    // missing flag and invalid family are usage errors
    assert_eq!(hyperzero(&["gen", "--n", "2"]).status.code(), Some(2));
    assert_eq!(hyperzero(&["gen", "--n", "1", "--r", "1", "--m-max", "3"]).status.code(), Some(2));
    assert_eq!(hyperzero(&["qroots", "--n", "2", "--r", "2", "--theta", "2.0"]).status.code(), Some(2));
    // for (2, 1) R_m vanishes on the theta_h grid, so the sign pattern cannot hold
    assert_eq!(hyperzero(&["signs", "--n", "2", "--r", "1", "--m", "5"]).status.code(), Some(1));
    assert_eq!(hyperzero(&["signs", "--n", "3", "--r", "2", "--m", "50"]).status.code(), Some(0));
}

#[test]
fn density_json() {
    let out = hyperzero(&["density", "--n", "3", "--r", "2", "--m-max", "30", "--bins", "1"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["coverage_fraction"], 1.0);
}
