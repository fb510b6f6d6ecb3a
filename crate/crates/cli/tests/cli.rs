use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn cwlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cwlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_p4(dir: &Path) -> String {
    let p = dir.join("p4.g");
    fs::write(&p, "v a\nv b\nv c\nv d\ne a b\ne b c\ne c d\n").unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn gen_h3_has_15_vertices_and_60_edges() {
    let o = cwlab(&["gen", "H", "3"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 15);
    assert_eq!(v["edges"].as_array().unwrap().len(), 60);
    let text = stdout(&cwlab(&["gen", "H", "3", "--format", "text"]));
    assert_eq!(text.lines().filter(|l| l.starts_with("e ")).count(), 60);
}

#[test]
fn width_of_p4_is_three_with_a_term() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write_p4(dir.path());
    let o = cwlab(&["width", "cwd", &p4]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], 3);
    let term: cwlab::CwTerm = v["certificate"].as_str().unwrap().parse().unwrap();
    assert_eq!(cwlab::term_width(&term), 3);
    assert_eq!(cwlab::eval_term(&term).unwrap().graph.edge_count(), 3);
    assert_eq!(cwlab(&["width", "cwd", &p4, "--max-k", "2"]).status.code(), Some(1));
    assert!(cwlab(&["width", "rwd", &p4, "--max-k", "1"]).status.success());
}

#[test]
fn pipeline_prop1_succeeds() {
    let o = cwlab(&["pipeline", "prop1", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], true);
    assert!(v.get("elapsed_ms").is_none());
    let timed: serde_json::Value =
        serde_json::from_str(&stdout(&cwlab(&["pipeline", "prop1alt", "2", "--timings"]))).unwrap();
    assert!(timed["elapsed_ms"].is_u64());
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["pipeline", "prop1alt", "3"][..],
        &["check", "prop2", "--max-n", "4", "--random", "3"],
        &["witness", "--max-candidates", "20"],
        &["gen", "Hprime", "4", "--format", "text"],
    ] {
        assert_eq!(cwlab(args).stdout, cwlab(args).stdout, "{args:?}");
    }
}

#[test]
fn usage_and_parse_errors_exit_with_two() {
    assert_eq!(cwlab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(cwlab(&["gen", "H", "3", "--bogus"]).status.code(), Some(2));
    assert_eq!(cwlab(&["gen", "H", "1"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.g");
    fs::write(&bad, "v a\ne a b\n").unwrap();
    let o = cwlab(&["width", "cwd", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn witness_checkpoint_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ck.json");
    let ck = ck.to_str().unwrap();
    let o = cwlab(&["witness", "--max-candidates", "0", "--checkpoint", ck]);
    assert!(o.status.success());
    let c: serde_json::Value = serde_json::from_str(&fs::read_to_string(ck).unwrap()).unwrap();
    assert_eq!(c["candidates_examined"], 0);
    assert_eq!(c["version"], 1);
    let part = cwlab(&["witness", "--max-candidates", "7", "--checkpoint", ck]);
    assert!(part.status.success());
    let resumed = cwlab(&["witness", "--resume", ck]);
    let full = cwlab(&["witness"]);
    assert_eq!(resumed.stdout, full.stdout);
}

#[test]
fn contract_alpha_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write_p4(dir.path());
    let v: serde_json::Value = serde_json::from_str(&stdout(&cwlab(&["contract", &p4, "b-c"]))).unwrap();
    assert_eq!(v["merge_map"]["c"], "b");
    assert_eq!(v["graph"]["vertices"].as_array().unwrap().len(), 3);
    let a: serde_json::Value = serde_json::from_str(&stdout(&cwlab(&["alpha", &p4, "a,c"]))).unwrap();
    assert_eq!(a["edges"], serde_json::json!([["a", "c"]]));
    assert_eq!(cwlab(&["alpha", &p4, "a,b"]).status.code(), Some(2));
    let out = dir.path().join("p4.dot");
    assert!(cwlab(&["export-dot", &p4, "--out", out.to_str().unwrap()]).status.success());
    assert!(fs::read_to_string(out).unwrap().contains("\"c\" -- \"d\";"));
}
