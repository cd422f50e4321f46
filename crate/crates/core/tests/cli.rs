use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pebblekit"))
        .args(args)
        .env_remove("PEBBLEKIT_BUDGET")
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn graph_file(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("pebblekit-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn pi_all_methods_on_path() {
    let out = stdout(&[
        "pi", "--family", "path", "--n", "3", "--t", "2", "--method", "all", "--format", "json",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["oracle"]["value"], 6);
    assert_eq!(v["formulas"][0]["name"], "path");
    assert_eq!(v["formulas"][0]["value"], 6);
    assert_eq!(v["bounds"]["lower"], 6);
    assert_eq!(v["bounds"]["upper"], 14);
}

#[test]
fn pi_from_graph_file() {
    let k3 = graph_file("k3.json", r#"{"n": 3, "edges": [[0,1],[1,2],[0,2]]}"#);
    let out = stdout(&[
        "pi", "--graph", &k3, "--t", "1", "--method", "oracle", "--format", "json",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["oracle"]["value"], 3);
    assert_eq!(v["oracle"]["witness_config"], serde_json::json!([1, 1, 0]));
}

#[test]
fn star_three_way() {
    let out = stdout(&[
        "pi", "--family", "star", "--n", "3", "--t", "3", "--method", "all",
    ]);
    assert!(out.contains("oracle: 10"), "{out}");
    assert!(out.contains("formula star: 14"), "{out}");
    assert!(out.contains("formula star-limit-argument: 11"), "{out}");
}

#[test]
fn solvable_queries() {
    let out = stdout(&[
        "solvable",
        "--family",
        "path",
        "--n",
        "3",
        "--config",
        "4, 0, 0",
        "--targets",
        "2",
    ]);
    assert!(out.starts_with("solvable\nmoves (3):"), "{out}");
    let out = stdout(&[
        "solvable",
        "--family",
        "path",
        "--n",
        "3",
        "--config",
        "3,0,0",
        "--targets",
        "2",
    ]);
    assert_eq!(out, "unsolvable\n");
    let out = stdout(&[
        "solvable",
        "--family",
        "path",
        "--n",
        "2",
        "--config",
        "2,0",
        "--weights",
        "1,1",
    ]);
    assert_eq!(out, "unsolvable\n");
    let out = stdout(&[
        "solvable", "--family", "path", "--n", "3", "--config", "3,0,0", "--t", "1", "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["solvable"], false);
    assert_eq!(v["failing_target"], serde_json::json!([2]));
}

#[test]
fn gamma_and_sequence() {
    let p2 = graph_file("p2.json", r#"{"n": 2, "edges": [[0,1]]}"#);
    assert!(stdout(&["gamma", "--graph", &p2, "--weights", "1,1"]).starts_with("3 "));
    let csv = stdout(&["sequence", "--family", "path", "--t", "1", "--n-max", "5"]);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("index,t,numerator,denominator,value,source")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.ends_with(",3/2,oracle")));
    let rho: Value = serde_json::from_str(&stdout(&[
        "sequence", "--family", "path", "--n", "3", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(rho["kind"], "rho");
    let values: Vec<&Value> = rho["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| &e["value"])
        .collect();
    assert_eq!(
        values,
        [
            &serde_json::json!({"num": 3, "den": 2}),
            &serde_json::json!({"num": 7, "den": 6})
        ]
    );
}

#[test]
fn audit_star_report() {
    let out = stdout(&["audit", "--family", "star", "--n", "3", "--t-range", "1..4"]);
    let v: Vec<Value> = serde_json::from_str(&out).unwrap();
    let three = v
        .iter()
        .find(|c| c["claim"] == "Thm14-t-eq-n[t=3]")
        .unwrap();
    assert_eq!(three["paper_value"]["thm14"], 14);
    assert_eq!(three["paper_value"]["thm19"], 11);
    assert_eq!(three["computed_value"], 10);
    assert_eq!(three["verdict"], "refuted-at-scale");
    assert_eq!(three["witness"]["kind"], "exact-value");
    for c in &v {
        if c["verdict"] == "refuted-at-scale" {
            assert!(!c["witness"].is_null(), "{c}");
        }
    }
}

#[test]
fn output_is_deterministic_across_workers() {
    let args = [
        "audit",
        "--family",
        "complete",
        "--n",
        "4",
        "--t-range",
        "1..4",
        "--n-max",
        "5",
    ];
    let one = stdout(&[&args[..], &["--workers", "1"]].concat());
    let four = stdout(&[&args[..], &["--workers", "4"]].concat());
    assert_eq!(one, four);
}

#[test]
fn exit_codes() {
    // budget exceeded
    let out = run(&[
        "pi",
        "--family",
        "path",
        "--n",
        "4",
        "--t",
        "2",
        "--budget-configs",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_pebblekit"))
        .args(["pi", "--family", "path", "--n", "4", "--t", "2"])
        .env("PEBBLEKIT_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // input errors
    for args in [
        &["pi", "--family", "path", "--n", "3"][..],
        &["pi", "--family", "path", "--n", "3", "--t", "9"],
        &[
            "solvable",
            "--family",
            "path",
            "--n",
            "3",
            "--config",
            "1,2",
            "--targets",
            "1",
        ],
        &[
            "solvable",
            "--family",
            "path",
            "--n",
            "3",
            "--config",
            "1,-2,0",
            "--targets",
            "1",
        ],
        &["pi", "--graph", "/nonexistent/graph.json", "--t", "1"],
        &["audit", "--family", "path", "--n", "3", "--t-range", "x..2"],
    ] {
        assert_eq!(run(args).status.code(), Some(1), "{args:?}");
    }

    let bad = graph_file(
        "bad.json",
        "{\n  \"n\": 2,\n  \"edges\": [[0, 1]],\n  \"colour\": 1\n}",
    );
    let out = run(&["pi", "--graph", &bad, "--t", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));

    let low = graph_file(
        "low.json",
        r#"{"n": 2, "edges": [[0,1]], "prices": [2, 1]}"#,
    );
    assert_eq!(
        run(&["pi", "--graph", &low, "--t", "1"]).status.code(),
        Some(1)
    );
}
