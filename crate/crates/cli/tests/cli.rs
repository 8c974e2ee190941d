use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trifree"))
        .args(args)
        .env_remove("EXTREMAL_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_examples() {
    let o = run(&["compute", "--d", "4", "--m", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("f(4, 9) = 39\n"));
    assert!(s.contains("status: ProvenOptimal"));

    let s = stdout(&run(&["compute", "--d", "1", "--m", "5"]));
    assert!(s.starts_with("f(1, 5) = 5\n"));

    let s = stdout(&run(&["compute", "--d", "9", "--m", "30"]));
    assert!(s.contains("f(9, 30) in ["));
    assert!(s.contains("status: Unknown"));
    assert!(!s.contains("[conjectured]"));
}

#[test]
fn conjectured_output_is_marked() {
    let s = stdout(&run(&["compute", "--d", "9", "--m", "30", "--assume-conjectures"]));
    assert!(s.lines().next().unwrap().ends_with("[conjectured]"));
    let s = stdout(&run(&["table", "--d", "8", "--m", "20", "--assume-conjectures"]));
    assert!(s.contains('*'));
    assert!(s.contains("[conjectured]"));
}

#[test]
fn compute_json() {
    let o = run(&["compute", "--d", "4", "--m", "9", "--format", "json"]);
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["value"], 39);
    assert_eq!(j["status"], "ProvenOptimal");
    assert_eq!(j["conjectured"], false);
    let g = run(&["compute", "--d", "4", "--m", "4", "--general", "--format", "json"]);
    let j: serde_json::Value = serde_json::from_slice(&g.stdout).unwrap();
    assert_eq!(j["value"], 20);
}

#[test]
fn witness_examples() {
    let o = run(&["witness", "--d", "2", "--m", "5", "--format", "graph6"]);
    assert_eq!(o.status.code(), Some(0));
    let g = trifree::io::graph6_decode(stdout(&o).trim()).unwrap();
    assert_eq!(g.edge_count(), 12);
    assert_eq!(g.components().len(), 3);

    let s = stdout(&run(&["witness", "--d", "4", "--m", "5"]));
    assert!(s.contains("22 edges"));
    let s = stdout(&run(&["witness", "--d", "3", "--m", "2"]));
    assert!(s.contains("8 vertices, 6 edges"));
}

#[test]
fn witness_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (d, m) in [(2, 5), (3, 7), (4, 9), (5, 13), (6, 8), (8, 12)] {
        for format in ["graph6", "json"] {
            let path = dir.path().join(format!("w-{d}-{m}.{format}"));
            let (ds, ms) = (d.to_string(), m.to_string());
            let p = path.to_str().unwrap();
            let o = run(&["witness", "--d", &ds, "--m", &ms, "--format", format, "--output", p]);
            assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
            let v = run(&["verify", "--d", &ds, "--m", &ms, p]);
            assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
            assert!(stdout(&v).contains("result: pass"));
        }
    }
}

#[test]
fn witness_dot_output() {
    let s = stdout(&run(&["witness", "--d", "2", "--m", "2", "--format", "dot"]));
    assert!(s.starts_with("graph"));
    assert_eq!(s.matches("--").count(), 5);
}

#[test]
fn verify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = dir.path().join("c5.g6");
    fs::write(&c5, "Dhc\n").unwrap();
    let o = run(&["verify", "--d", "2", "--m", "2", c5.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    let k3 = dir.path().join("k3.json");
    fs::write(&k3, r#"{"n":3,"edges":[[0,1],[1,2],[0,2]]}"#).unwrap();
    let o = run(&["verify", "--d", "2", "--m", "1", k3.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("fail: triangle"));

    let a4 = dir.path().join("a4.g6");
    let g = trifree::constructions::construct_ad(4).unwrap();
    fs::write(&a4, trifree::io::graph6_encode(&g)).unwrap();
    let o = run(&["verify", "--d", "4", "--m", "4", "--format", "json", a4.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["edges"], 17);
    assert_eq!(j["passes"], true);
}

#[test]
fn verify_parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.g6");
    fs::write(&bad, "D\n").unwrap();
    assert_eq!(run(&["verify", "--d", "2", "--m", "2", bad.to_str().unwrap()]).status.code(), Some(2));
    let missing = dir.path().join("missing.g6");
    assert_eq!(run(&["verify", "--d", "2", "--m", "2", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn table_cells() {
    let o = run(&["table", "--d", "5", "--m", "11", "--format", "json"]);
    let cells: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    let cell = |d: u64, m: u64| cells.iter().find(|c| c["d"] == d && c["m"] == m).unwrap().clone();
    let c = cell(4, 4);
    assert_eq!((c["f"].as_u64(), c["f_gen"].as_u64(), c["h"].as_u64()), (Some(17), Some(20), Some(3)));
    let c = cell(5, 11);
    assert_eq!((c["f"].as_u64(), c["f_gen"].as_u64(), c["h"].as_u64()), (Some(58), Some(61), Some(3)));
    let c = cell(1, 3);
    assert_eq!((c["f"].as_u64(), c["f_gen"].as_u64(), c["h"].as_u64()), (Some(3), Some(3), Some(0)));
}

#[test]
fn table_output_is_deterministic() {
    let a = run(&["table"]).stdout;
    let b = run(&["table"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn oracle_examples() {
    let o = run(&["oracle", "--d", "2", "--m", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("oracle value: 7"));
    assert!(s.contains("agreement"));

    let s = stdout(&run(&["oracle", "--zd", "--d", "3"]));
    assert!(s.starts_with("oracle: Exact(3)"));

    let o = run(&["oracle", "--d", "3", "--m", "3", "--format", "json"]);
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["components"], 10);
    assert_eq!(j["agrees"], true);
}

#[test]
fn budget_flags() {
    assert_eq!(run(&["oracle", "--d", "2", "--m", "2", "--budget-vertices", "17"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_trifree"))
        .args(["oracle", "--zd", "--d", "4"])
        .env("EXTREMAL_BUDGET", "9")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("not found with matching number <= 4"));
    let o = Command::new(env!("CARGO_BIN_EXE_trifree"))
        .args(["oracle", "--zd", "--d", "2"])
        .env("EXTREMAL_BUDGET", "99")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["compute", "--d", "0", "--m", "3"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "--d", "3"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "--d", "3", "--m", "3", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(run(&["oracle", "--d", "3"]).status.code(), Some(2));
}
