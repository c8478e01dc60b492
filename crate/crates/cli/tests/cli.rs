use std::process::{Command, Output};

use serde_json::Value;

fn cpn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cpn"))
        .args(args)
        .arg("--quiet")
        .output()
        .expect("cpn runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(o: &Output) -> Vec<Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn gen_counts_arcs() {
    let o = cpn(&["gen", "--delta", "2", "--dee", "2", "--format", "jsonl"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 12);

    let o = cpn(&[
        "gen", "--delta", "4", "--dee", "4", "--r", "1", "--format", "csv",
    ]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("src,dst,op,kind"));
    assert_eq!(lines.count(), 360);
}

#[test]
fn gen_dot_carries_params() {
    let o = cpn(&["gen", "--delta", "2", "--dee", "2"]);
    let text = stdout(&o);
    assert!(text.starts_with("digraph"));
    assert!(text.contains("comment=\"delta=2 dee=2 r=0\""));
    assert_eq!(text.matches(" -> ").count(), 12);
}

#[test]
fn gen_distance_table() {
    let o = cpn(&[
        "gen",
        "--delta",
        "3",
        "--dee",
        "3",
        "--distances",
        "--from",
        "123",
    ]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 25);
    assert!(text.lines().any(|l| l == "123,321,2"));
}

#[test]
fn bad_params_exit_two() {
    assert_eq!(
        cpn(&["gen", "--delta", "3", "--dee", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        cpn(&["gen", "--delta", "3", "--dee", "3", "--format", "xml"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cpn(&["container", "1234", "1234", "--delta", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cpn(&["gen", "--delta", "7", "--dee", "7", "--max-vertices", "100"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn route_modes() {
    let o = cpn(&["route", "47285136", "82164753", "--format", "jsonl"]);
    assert_eq!(records(&o)[0]["outputs"]["length"], 4);

    let o = cpn(&[
        "route",
        "1234",
        "5214",
        "--delta",
        "4",
        "--r",
        "1",
        "--mode",
        "restricted",
        "--format",
        "jsonl",
    ]);
    let rec = &records(&o)[0];
    assert_eq!(rec["outputs"]["length"], 5);
    assert_eq!(rec["pass"], true);

    let o = cpn(&[
        "route", "12345", "12345", "--r", "1", "--mode", "reach", "--format", "jsonl",
    ]);
    let rec = &records(&o)[0];
    assert_eq!(rec["outputs"]["length"], 6);
    assert_eq!(rec["params"]["delta"], 5);
}

#[test]
fn route_text_lists_ops() {
    let o = cpn(&["route", "1325", "2134", "--delta", "5"]);
    let text = stdout(&o);
    assert!(text.contains("length"));
    assert!(
        text.lines()
            .filter(|l| l.trim_start().starts_with('R') || l.trim_start().starts_with('S'))
            .count()
            >= 1
    );
}

#[test]
fn container_reproduces_table() {
    let o = cpn(&[
        "container",
        "1325",
        "1234",
        "--delta",
        "5",
        "--format",
        "jsonl",
    ]);
    assert!(o.status.success());
    let rec = &records(&o)[0];
    assert_eq!(rec["outputs"]["length"], 6);
    assert_eq!(rec["outputs"]["valid"], true);
    assert_eq!(rec["outputs"]["paths"][0][1], "2135");
    assert_eq!(
        rec["outputs"]["lengths"],
        serde_json::json!([6, 6, 4, 5, 5])
    );

    let o = cpn(&["container", "5432", "1234", "--format", "jsonl"]);
    assert_eq!(records(&o)[0]["outputs"]["length"], 6);
}

#[test]
fn verify_suites_pass_on_small_grid() {
    for suite in [
        "distances",
        "uniqueness",
        "diameter",
        "reachability",
        "containers",
        "witness",
        "menger",
    ] {
        let o = cpn(&["verify", suite, "--max-vertices", "360", "--samples", "300"]);
        assert!(
            o.status.success(),
            "{suite}: {}",
            String::from_utf8_lossy(&o.stdout)
        );
        for rec in records(&o) {
            assert_eq!(rec["schema"], 1);
            assert_eq!(rec["pass"], true);
        }
    }
}

#[test]
fn uniqueness_fails_under_deletion() {
    let o = cpn(&[
        "verify",
        "uniqueness",
        "--delta",
        "4",
        "--dee",
        "4",
        "--r",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let rec = &records(&o)[0];
    assert_eq!(rec["pass"], false);
    let cited = rec["outputs"]["counterexamples"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["src"] == "1234" && c["dst"] == "5214");
    assert!(cited);
}

#[test]
fn verify_output_is_deterministic() {
    let args = [
        "verify",
        "menger",
        "--delta",
        "4",
        "--dee",
        "3",
        "--seed",
        "7",
        "--samples",
        "50",
    ];
    assert_eq!(cpn(&args).stdout, cpn(&args).stdout);
}

#[test]
fn params_report() {
    let o = cpn(&[
        "params", "--delta", "4", "--dee", "4", "--r", "1", "--format", "jsonl",
    ]);
    let rec = &records(&o)[0];
    assert_eq!(rec["outputs"]["vertices"], 120);
    assert_eq!(rec["outputs"]["arcs"], 360);
    assert_eq!(rec["outputs"]["diameter"], 5);
}
