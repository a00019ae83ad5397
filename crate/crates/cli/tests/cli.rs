use std::path::Path;
use std::process::{Command, Output};

use induced_menger::format::{parse_instance, write_instance};
use induced_menger::random::{gnp, random_terminals, rng_from_seed};
use induced_menger::Instance;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_induced-menger"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn flow_on_a_single_edge() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "edge.txt", "p 2 1\ne 0 1\na 0\nb 1\n");
    let out = run(&["flow", &file]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "{\"schema\":1,\"paths\":[[0,1]],\"separator\":[0]}\n");
}

#[test]
fn generated_counterexample_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g54.txt");
    let file = file.to_str().unwrap();
    let out = run(&["gen-counterexample", "5", "4", "--out", file]);
    assert_eq!(out.status.code(), Some(0));
    let instance = parse_instance(&std::fs::read_to_string(file).unwrap()).unwrap();
    assert_eq!(instance.graph.n(), 55);

    let out = run(&["verify", file]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["schema"], 1);
    assert_eq!(report["all_passed"], true);
    assert_eq!(report["report"]["flow"], 5);
    assert_eq!(report["report"]["girth"], 6);
}

#[test]
fn verify_rejects_other_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "path.txt", "p 3 2\ne 0 1\ne 1 2\na 0\nb 2\n");
    assert_eq!(run(&["verify", &file]).status.code(), Some(1));
}

#[test]
fn oracle_with_empty_a() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "no-a.txt", "p 3 2\ne 0 1\ne 1 2\nb 2\n");
    let out = run(&["oracle", &file]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["packing"], 0);
}

#[test]
fn oracle_respects_the_cap() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g34.txt");
    let file = file.to_str().unwrap();
    assert!(run(&["gen-counterexample", "3", "4", "--out", file]).status.success());
    assert_eq!(run(&["oracle", file, "--oracle-cap", "20"]).status.code(), Some(2));
    let out = run(&["oracle", file, "--format", "text"]);
    assert_eq!(stdout(&out), "packing 1\nflow 3\n");
}

#[test]
fn exit_codes_for_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let missing_newline = write(dir.path(), "a.txt", "p 2 1\ne 0 1");
    let out = run(&["flow", &missing_newline]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains(":2:"));
    let reversed = write(dir.path(), "b.txt", "p 2 1\ne 1 0\n");
    assert_eq!(run(&["solve", &reversed]).status.code(), Some(1));
    assert_eq!(run(&["flow", "/nonexistent/file"]).status.code(), Some(1));
    assert_eq!(run(&["flow"]).status.code(), Some(1));
    assert_eq!(run(&["solve", &missing_newline, "--solver", "greedy"]).status.code(), Some(1));
    assert_eq!(run(&["gen-counterexample", "0", "4"]).status.code(), Some(1));
}

#[test]
fn solve_reports_the_separator_when_short() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g24.txt");
    let file = file.to_str().unwrap();
    assert!(run(&["gen-counterexample", "2", "4", "--out", file]).status.success());
    let out = run(&["solve", file, "--solver", "both", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["best"], 1);
    assert_eq!(value["separator"]["flow"], 2);
    assert_eq!(value["separator"]["separator"].as_array().unwrap().len(), 2);
    assert_eq!(value["bounded_degree"]["paths"]["pairwise_anticomplete"], true);
    let out = run(&["solve", file, "--k", "1"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(value["separator"].is_null());
    assert!(value.get("minor_free").is_none());
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g36.txt");
    let file = file.to_str().unwrap();
    assert!(run(&["gen-counterexample", "3", "6", "--out", file]).status.success());
    for args in [
        vec!["solve", file, "--solver", "both"],
        vec!["sparsify", file],
        vec!["verify", file],
        vec!["bench", "--seed", "7", "--sizes", "20", "--instances", "3", "--solver", "both"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert!(first.status.success(), "{args:?}");
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn bench_csv_shape() {
    let out = run(&["bench", "--deltas", "3", "--sizes", "16", "--terminals", "2,3", "--instances", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "delta,k,n,flow,achieved,ratio");
    assert_eq!(lines.len(), 5);
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 6);
        let (flow, achieved): (usize, usize) = (fields[3].parse().unwrap(), fields[4].parse().unwrap());
        assert!(achieved <= flow && (flow == 0 || achieved >= 1));
    }
    assert_ne!(stdout(&run(&["bench", "--seed", "1", "--sizes", "16"])), stdout(&run(&["bench", "--seed", "2", "--sizes", "16"])));
}

#[test]
fn sparsify_text_is_an_instance_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g34.txt");
    let file = file.to_str().unwrap();
    assert!(run(&["gen-counterexample", "3", "4", "--out", file]).status.success());
    let out = run(&["sparsify", file, "--format", "text"]);
    let kept = parse_instance(&stdout(&out)).unwrap();
    assert_eq!(kept.a.len(), 3);
    let json: serde_json::Value = serde_json::from_str(&stdout(&run(&["sparsify", file]))).unwrap();
    assert_eq!(json["kept"].as_array().unwrap().len(), kept.graph.n());
    assert_eq!(json["edges"].as_array().unwrap().len(), kept.graph.m());
}

#[test]
fn round_trip_through_the_flow_command() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..20 {
        let mut rng = rng_from_seed(seed);
        let n = 3 + seed as usize % 12;
        let graph = gnp(n, 0.3, &mut rng);
        let (a, b) = random_terminals(n, 2, 2, &mut rng);
        let instance = Instance { graph, a, b };
        let text = write_instance(&instance);
        assert_eq!(parse_instance(&text).unwrap(), instance);
        let file = write(dir.path(), &format!("{seed}.txt"), &text);
        let out = run(&["flow", &file, "--format", "text"]);
        assert!(out.status.success());
        assert!(stdout(&out).starts_with("flow "));
    }
}
