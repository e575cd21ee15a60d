use std::process::{Command, Output};

fn pzf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pzf"))
        .args(args)
        .env_remove("PZF_STATE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn ept_csv_lists_every_vertex_and_the_minimum() {
    let o = pzf(&["--format", "csv", "ept", "--family", "k", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("graph,start,ept,decimal,digits,states,method,argmin"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r.contains("951/380")));
    assert!(rows[4].starts_with("k 4,min,"));
}

#[test]
fn graph6_input_uses_the_subset_engine() {
    let o = pzf(&["--format", "csv", "ept", "--graph6", "C~", "--start", "0,1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("subsets"));
}

#[test]
fn json_output_is_parseable() {
    let o = pzf(&["--format", "json", "add-edge", "5"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["failures"], 0);
    assert_eq!(v["rows"][0]["ept"], "883/216");
}

#[test]
fn table_check_passes() {
    let o = pzf(&["table", "small", "--assert"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("MISMATCH"));
}

#[test]
fn out_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("pzf-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k5.csv");
    let o = pzf(&["--format", "csv", "--out", path.to_str().unwrap(), "ept", "--family", "k", "5"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("graph,"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(pzf(&["ept"]).status.code(), Some(2));
    assert_eq!(pzf(&["ept", "--family", "k", "0"]).status.code(), Some(2));
    assert_eq!(pzf(&["ept", "--edges", "/nonexistent/graph.txt"]).status.code(), Some(2));
    assert_eq!(pzf(&["--state-cap", "4", "ept", "--family", "path", "6"]).status.code(), Some(3));
    let capped = Command::new(env!("CARGO_BIN_EXE_pzf"))
        .args(["ept", "--family", "path", "6"])
        .env("PZF_STATE_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
}

#[test]
fn simulation_is_reproducible() {
    let args = ["--format", "csv", "simulate", "--family", "cycle", "6", "--trials", "500", "--seed", "9"];
    let a = stdout(&pzf(&args));
    let b = stdout(&pzf(&args));
    assert_eq!(a, b);
}
