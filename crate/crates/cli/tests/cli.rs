use std::process::{Command, Output};

use k3walls::paper::VerifyReport;
use k3walls::walls::{WallKind, WallReport};

fn k3walls(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3walls")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn walls_json(args: &[&str]) -> WallReport {
    let o = k3walls(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn one_wall_at_eleven() {
    let rep = walls_json(&["walls", "--vector", "1,0,-1", "--t-range", "1:40"]);
    let walls: Vec<_> = rep.walls().collect();
    assert_eq!(walls.len(), 1);
    assert_eq!(walls[0].t_star.to_string(), "11");
    assert_eq!(walls[0].kind, WallKind::Flopping);
}

#[test]
fn no_lines_removes_the_wall() {
    let rep = walls_json(&["walls", "--vector", "1,0,-1", "--t-range", "1:40", "--no-lines"]);
    assert_eq!(rep.walls().count(), 0);
    let low = rep.lower_endpoint.expect("open lower endpoint is classified");
    let ws: Vec<String> = low.witness_profiles().iter().map(|w| w.to_string()).collect();
    assert_eq!(ws, ["(-2, 10, 10, -3)", "(0, 2, -2, -1)", "(1, -2, -2, 0)", "(3, -10, 10, 2)"]);
}

#[test]
fn malformed_vector_is_a_usage_error() {
    let o = k3walls(&["walls", "--vector", "1,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("`s`"));
    let o = k3walls(&["walls", "--vector", "1,x,-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("`c`"));
    assert_eq!(k3walls(&["walls", "--vector", "1,0,-1", "--t-range", "0:4"]).status.code(), Some(2));
    assert_eq!(k3walls(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn non_primitive_vector_is_rejected() {
    let o = k3walls(&["walls", "--vector", "2,0,-2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn walls_output_is_stable_and_round_trips() {
    let args = ["walls", "--vector", "1,0,-1", "--t-range", "[1,inf)"];
    let a = stdout(&k3walls(&args));
    let mut par = args.to_vec();
    par.extend(["--parallelism", "4"]);
    assert_eq!(a, stdout(&k3walls(&par)));
    let rep: WallReport = serde_json::from_str(&a).unwrap();
    assert_eq!(serde_json::to_string_pretty(&rep).unwrap() + "\n", a);
}

#[test]
fn verify_paper_passes_and_is_stable() {
    let a = k3walls(&["verify-paper"]);
    assert_eq!(a.status.code(), Some(0));
    let b = k3walls(&["verify-paper", "--parallelism", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let rep: VerifyReport = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(rep.schema_version, 1);
    assert_eq!((rep.passed, rep.total), (12, 12));
    assert_eq!(serde_json::to_string_pretty(&rep).unwrap() + "\n", stdout(&a));
}

#[test]
fn verify_paper_without_exclusions_fails() {
    let o = k3walls(&["verify-paper", "--exclusions", ""]);
    assert_eq!(o.status.code(), Some(1));
    let rep: VerifyReport = serde_json::from_str(&stdout(&o)).unwrap();
    for i in 3..6 {
        assert!(!rep.checks[i].status.is_pass(), "{}", rep.checks[i].id);
    }
}

#[test]
fn verify_paper_conditional_checks_without_lines_or_conics() {
    let o = k3walls(&["verify-paper", "--no-lines", "--no-conics", "--format", "table"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("12/12 passed"));
}

#[test]
fn config_file_and_flag_override() {
    let dir = std::env::temp_dir().join(format!("k3walls-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.json");
    std::fs::write(
        &path,
        r#"{"context": {"degree": 10, "excluded_isotropic_degrees": [], "has_lines": false, "has_conics": true}}"#,
    )
    .unwrap();
    let cfg = path.to_str().unwrap();
    let o = k3walls(&["verify-paper", "--config", cfg]);
    assert_eq!(o.status.code(), Some(1));
    let o = k3walls(&["verify-paper", "--config", cfg, "--exclusions", "1,2,3,4"]);
    assert_eq!(o.status.code(), Some(0));
    let rep: VerifyReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!rep.context.has_lines);
    std::fs::write(&path, r#"{"bogus": 1}"#).unwrap();
    assert_eq!(k3walls(&["verify-paper", "--config", cfg]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn descent_examples() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&k3walls(&["descent", "--mukai", "1,0,0,-1"]))).unwrap();
    assert_eq!(v["forg"], serde_json::json!({"a": -2, "b": 0}));
    assert_eq!(v["charge"]["re"], "2/5");
    assert_eq!(v["charge"]["im_coeff"], "4/5");
    let v: serde_json::Value = serde_json::from_str(&stdout(&k3walls(&["descent", "--ku", "-1,0"]))).unwrap();
    assert_eq!(v["inf"], serde_json::json!({"r": 1, "d": 0, "q": 0, "s": -1}));
    let v: serde_json::Value = serde_json::from_str(&stdout(&k3walls(&["descent", "--ku", "0,0"]))).unwrap();
    assert_eq!(v["inf"], serde_json::json!({"r": 0, "d": 0, "q": 0, "s": 0}));
    assert_eq!(v["charge"]["re"], "0");
    assert_eq!(k3walls(&["descent", "--ku", "1"]).status.code(), Some(2));
    assert_eq!(k3walls(&["descent"]).status.code(), Some(2));
    assert_eq!(k3walls(&["descent", "--ku", "1,0", "--mukai", "1,0,0,0"]).status.code(), Some(2));
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("k3walls-out-{}.json", std::process::id()));
    let o = k3walls(&["descent", "--ku", "1,1", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text, stdout(&k3walls(&["descent", "--ku", "1,1"])));
    std::fs::remove_file(&path).unwrap();
}
