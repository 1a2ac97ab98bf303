use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use polarosc::export::{matrix_from_csv, pattern_from_pbm, trajectory_from_csv, trajectory_from_json};
use polarosc::graph::io::read_graph;
use serde_json::Value;

fn polarosc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polarosc"))
        .args(args)
        .env_remove("POLAROSC_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = polarosc(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_str().unwrap().to_string();
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &path]);
    ok(&full);
    path
}

fn scenario(dir: &Path, threshold: f64) -> String {
    let graph = gen(dir, "two_cluster.json", &["two-cluster", "--sizes", "6,6", "--intra", "1.0", "--bridge", "0.1", "--bridges", "2", "--seed", "7"]);
    let config = serde_json::json!({
        "graph": {"path": graph},
        "threshold": threshold,
        "potential": {"a": -2.0, "b": 1.0},
        "time": {"dt": 0.1, "steps": 20},
        "seed": 7
    });
    let path = dir.join(format!("scenario_{threshold}.json"));
    fs::write(&path, config.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn gen_complete_has_all_links() {
    let dir = tempfile::tempdir().unwrap();
    let g = read_graph(Path::new(&gen(dir.path(), "k5.json", &["complete", "--n", "5"]))).unwrap();
    assert_eq!((g.n(), g.edge_count()), (5, 20));
    let p4 = read_graph(Path::new(&gen(dir.path(), "p4.txt", &["path", "--n", "4", "--format", "edges"]))).unwrap();
    assert_eq!(p4.edge_count(), 6);
}

#[test]
fn gen_rejects_bad_parameters() {
    assert_eq!(polarosc(&["gen", "complete", "--n", "1"]).status.code(), Some(2));
    assert_eq!(polarosc(&["gen", "two-cluster", "--bridges", "0"]).status.code(), Some(2));
}

#[test]
fn analyze_reports_spectrum_and_patterns() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = gen(dir.path(), "k3.json", &["complete", "--n", "3"]);
    let v: Value = serde_json::from_str(&ok(&["analyze", &k3])).unwrap();
    let eig: Vec<f64> = v["eigenvalues"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert_eq!(eig[0], 0.0);
    assert!((eig[1] - 3.0).abs() < 1e-12 && (eig[2] - 3.0).abs() < 1e-12);
    assert_eq!(v["sqrt_pattern"], Value::Bool(true));
    assert_eq!(v["hamiltonian"]["block_pattern_matches"], Value::Bool(true));
    assert!(v["algebra"].as_array().unwrap().iter().all(|c| c["holds"] == Value::Bool(true)));

    let p4 = gen(dir.path(), "p4.json", &["path", "--n", "4"]);
    let v: Value = serde_json::from_str(&ok(&["analyze", &p4])).unwrap();
    assert_eq!(v["sqrt_pattern"], Value::Bool(false));
}

#[test]
fn isolated_node_is_a_numerical_error_naming_the_node() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("iso.json");
    fs::write(&path, r#"{"n": 3, "edges": [[0, 2, 1.0], [2, 0, 1.0]]}"#).unwrap();
    let out = polarosc(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("node 1"));
}

#[test]
fn missing_file_is_an_io_error() {
    assert_eq!(polarosc(&["analyze", "/nonexistent/graph.json"]).status.code(), Some(4));
}

#[test]
fn bosonic_refuses_sparse_graphs_unless_forced() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = gen(dir.path(), "p4.json", &["path", "--n", "4"]);
    let out = polarosc(&["simulate", &p4, "--solver", "bosonic", "--t-end", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sqrt_pattern"));

    let csv = dir.path().join("b.csv");
    let summary = ok(&["simulate", &p4, "--solver", "bosonic", "--force", "--t-end", "1", "-o", csv.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&summary).unwrap();
    assert_eq!(v["admissible"], Value::Bool(false));
    let (times, xs) = trajectory_from_csv(&fs::read_to_string(&csv).unwrap()).unwrap();
    assert_eq!((times.len(), xs[0].len()), (101, 4));
}

#[test]
fn fermionic_agrees_with_oracle_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen(dir.path(), "r.json", &["random", "--n", "8", "--seed", "3"]);
    let out = dir.path().join("f.json");
    let summary = ok(&["simulate", &g, "--compare-oracle", "--t-end", "5", "--dt", "0.05", "--json", "-o", out.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&summary).unwrap();
    assert!(v["oracle_deviation"].as_f64().unwrap() <= 1e-6);
    let rec = trajectory_from_json(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(rec.len(), 101);
    assert!(rec.meta.graph_hash.is_some());
}

#[test]
fn oracle_summary_reports_energy() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen(dir.path(), "c.json", &["cycle", "--n", "6"]);
    let out = dir.path().join("o.csv");
    let v: Value = serde_json::from_str(&ok(&["simulate", &g, "--solver", "oracle", "--t-end", "2", "-o", out.to_str().unwrap()])).unwrap();
    assert!(v["energy_drift"].as_f64().unwrap() <= 1e-6);
}

#[test]
fn polarize_two_cluster_scenario() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = scenario(dir.path(), 0.5);
    let out_dir = dir.path().join("out");
    let v: Value = serde_json::from_str(&ok(&["polarize", &cfg, "--out-dir", out_dir.to_str().unwrap()])).unwrap();
    assert_eq!(v["components"], 2);
    assert_eq!((v["zero_modes_pre"].as_u64(), v["zero_modes_post"].as_u64()), (Some(1), Some(2)));
    assert_eq!(v["sqrt_pattern_pre"], Value::Bool(false));
    assert_eq!(v["sqrt_pattern_post"], serde_json::json!([true, true]));

    let report: Value = serde_json::from_str(&fs::read_to_string(out_dir.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["potential"]["phase"], "broken");
    for name in ["pre.csv", "post_0.csv", "post_1.csv"] {
        trajectory_from_csv(&fs::read_to_string(out_dir.join(name)).unwrap()).unwrap();
    }
}

#[test]
fn polarize_with_zero_threshold_keeps_one_component() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = scenario(dir.path(), 0.0);
    let out_dir = dir.path().join("out");
    let v: Value = serde_json::from_str(&ok(&["polarize", &cfg, "--out-dir", out_dir.to_str().unwrap()])).unwrap();
    assert_eq!(v["components"], 1);
}

#[test]
fn polarize_uses_output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = scenario(dir.path(), 0.5);
    let out_dir = dir.path().join("env_out");
    let out = Command::new(env!("CARGO_BIN_EXE_polarosc"))
        .args(["polarize", &cfg])
        .env("POLAROSC_OUT_DIR", &out_dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out_dir.join("report.json").exists());
}

#[test]
fn malformed_config_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{\"graph\": ").unwrap();
    assert_eq!(polarosc(&["polarize", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn exports_round_trip_through_parsers() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen(dir.path(), "p3.json", &["path", "--n", "3", "--weight", "0.5"]);
    let l = matrix_from_csv(&ok(&["export", &g, "laplacian"])).unwrap();
    assert_eq!(l[(1, 1)], 1.0);
    let h = matrix_from_csv(&ok(&["export", &g, "hamiltonian"])).unwrap();
    assert_eq!(h.shape(), (6, 6));
    let blocks = pattern_from_pbm(&ok(&["export", &g, "hamiltonian-pattern"])).unwrap();
    assert_eq!(blocks[0], vec![true, true, false]);
    let root = pattern_from_pbm(&ok(&["export", &g, "sqrt-pattern"])).unwrap();
    assert!(root[0][2], "square root of a path is dense");
    let norm = matrix_from_csv(&ok(&["export", &g, "normalized"])).unwrap();
    assert!((norm[(0, 0)] - 1.0).abs() < 1e-15);
}
