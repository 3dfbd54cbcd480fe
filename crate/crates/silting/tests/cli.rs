//! End-to-end CLI tests: exit codes, determinism, and emitted files that
//! re-parse into equivalent objects.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_silting")
}

fn write_doc(dir: &std::path::Path, name: &str, doc: &serde_json::Value) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(doc).unwrap()).unwrap();
    path
}

fn a2_doc() -> serde_json::Value {
    serde_json::json!({
        "algebra": {
            "vertices": 2,
            "arrows": [[0, 0, 1]],
            "relations": [],
            "nilpotency_bound": 2,
            "field": {"prime": 32003}
        },
        "modules": {
            "S0": {"dims": [1, 0], "arrows": {}}
        },
        "presentations": {
            "T0": {"p1": [], "p0": [0, 1], "matrix": [[], []]},
            "bad": {"p1": [0], "p0": [0], "matrix": [[[["1", 0]]]]}
        }
    })
}

fn a1_doc() -> serde_json::Value {
    serde_json::json!({
        "algebra": {
            "vertices": 1,
            "arrows": [],
            "relations": [],
            "nilpotency_bound": 1,
            "field": {"prime": 32003}
        },
        "presentations": {
            "proj": {"p1": [], "p0": [0], "matrix": [[]]},
            "shift": {"p1": [0], "p0": [], "matrix": []}
        }
    })
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn algebra_info_reports_dimension() {
    let dir = tempdir();
    let input = write_doc(&dir, "a2.json", &a2_doc());
    let out = run(&["algebra-info", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("dim 3"));
}

#[test]
fn semisimple_three_vertex_report() {
    let dir = tempdir();
    let doc = serde_json::json!({
        "algebra": {
            "vertices": 3, "arrows": [], "relations": [],
            "nilpotency_bound": 1, "field": {"prime": 32003}
        }
    });
    let input = write_doc(&dir, "ss.json", &doc);
    let out = run(&["algebra-info", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("dim 3"));
    assert!(text.contains("semisimple"));
}

#[test]
fn malformed_relation_exits_2() {
    let dir = tempdir();
    let doc = serde_json::json!({
        "algebra": {
            "vertices": 2, "arrows": [[0, 0, 1]],
            "relations": [[["1", [0]]]],
            "nilpotency_bound": 2, "field": {"prime": 32003}
        }
    });
    let input = write_doc(&dir, "bad.json", &doc);
    let out = run(&["algebra-info", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("non-admissible"));
}

#[test]
fn rigid_verdicts_drive_exit_codes() {
    let dir = tempdir();
    let input = write_doc(&dir, "a2.json", &a2_doc());
    let ok = run(&["rigid", "--input", input.to_str().unwrap(), "--pres", "T0"]);
    assert_eq!(ok.status.code(), Some(0));
    // P_0[0] + its own presentation by the identity is contractible, so use
    // the non-rigid P_0[1] + P_0[0] pair instead: handle `bad` is P --e--> P,
    // which minimizes to zero and is rigid; build the genuine non-rigid one
    let doc = serde_json::json!({
        "algebra": a2_doc()["algebra"],
        "presentations": {
            "nr": {"p1": [0], "p0": [0, 1], "matrix": [[[]], [[]]]}
        }
    });
    let input2 = write_doc(&dir, "nr.json", &doc);
    let out = run(&["rigid", "--input", input2.to_str().unwrap(), "--pres", "nr"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("not rigid"));
}

#[test]
fn e_dim_over_a1_is_corner_dimension() {
    let dir = tempdir();
    let input = write_doc(&dir, "a1.json", &a1_doc());
    let out = run(&[
        "e-dim",
        "--input",
        input.to_str().unwrap(),
        "--f1",
        "shift",
        "--f2",
        "proj",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("= 1"));
}

#[test]
fn graph_output_is_byte_stable() {
    let dir = tempdir();
    let input = write_doc(&dir, "a2.json", &a2_doc());
    let args = [
        "graph",
        "--input",
        input.to_str().unwrap(),
        "--format",
        "dot",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).matches("->").count(), 5);
}

#[test]
fn graph_cap_exits_3_with_partial_output() {
    let dir = tempdir();
    let doc = serde_json::json!({
        "algebra": {
            "vertices": 2, "arrows": [[0, 0, 1], [1, 0, 1]],
            "relations": [], "nilpotency_bound": 2,
            "field": {"prime": 32003}
        }
    });
    let input = write_doc(&dir, "kron.json", &doc);
    let out = run(&[
        "graph",
        "--input",
        input.to_str().unwrap(),
        "--cap-vertices",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("partial"));
}

#[test]
fn min_pres_output_reparses_as_rigid_presentation() {
    let dir = tempdir();
    let input = write_doc(&dir, "a2.json", &a2_doc());
    let outfile = dir.join("s0pres.json");
    let out = run(&[
        "min-pres",
        "--input",
        input.to_str().unwrap(),
        "--module",
        "S0",
        "--format",
        "json",
        "--out",
        outfile.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let pres: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&outfile).unwrap()).unwrap();
    assert_eq!(pres["p0"], serde_json::json!([0]));
    assert_eq!(pres["p1"], serde_json::json!([1]));
    let mut doc = a2_doc();
    doc["presentations"]["s0"] = pres;
    let input2 = write_doc(&dir, "a2b.json", &doc);
    let rigid = run(&["rigid", "--input", input2.to_str().unwrap(), "--pres", "s0"]);
    assert_eq!(rigid.status.code(), Some(0));
}

#[test]
fn tau_output_is_a_module_file() {
    let dir = tempdir();
    let input = write_doc(&dir, "a2.json", &a2_doc());
    let out = run(&[
        "tau",
        "--input",
        input.to_str().unwrap(),
        "--module",
        "S0",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dims"], serde_json::json!([0, 1]));
}

#[test]
fn mutate_twice_returns_to_start() {
    let dir = tempdir();
    let input = write_doc(&dir, "a2.json", &a2_doc());
    let first = run(&[
        "mutate",
        "--input",
        input.to_str().unwrap(),
        "--pres",
        "T0",
        "--summand",
        "0",
        "--format",
        "json",
    ]);
    assert_eq!(first.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    let summands = v["silting"]["summands"].as_array().unwrap();
    let gm = v["silting"]["g_matrix"].as_array().unwrap();
    // rebuild the mutated object as one presentation handle
    let mut p1 = Vec::new();
    let mut p0 = Vec::new();
    let mut matrix = vec![];
    let mut blocks: Vec<(usize, usize, serde_json::Value)> = Vec::new();
    for s in summands {
        let sp1 = s["p1"].as_array().unwrap().len();
        let sp0 = s["p0"].as_array().unwrap().len();
        blocks.push((sp0, sp1, s["matrix"].clone()));
        p1.extend(s["p1"].as_array().unwrap().iter().cloned());
        p0.extend(s["p0"].as_array().unwrap().iter().cloned());
    }
    let total_cols = p1.len();
    let mut col_off = 0;
    for (rows, cols, m) in &blocks {
        for i in 0..*rows {
            let mut row = vec![serde_json::json!([]); total_cols];
            for j in 0..*cols {
                row[col_off + j] = m[i][j].clone();
            }
            matrix.push(serde_json::Value::Array(row));
        }
        col_off += cols;
    }
    let mut doc = a2_doc();
    doc["presentations"]["mut1"] = serde_json::json!({
        "p1": p1, "p0": p0, "matrix": matrix
    });
    // mutate back at the summand that is not a plain projective: its
    // g-vector row has a negative entry
    let back_idx = gm
        .iter()
        .position(|row| row.as_array().unwrap().iter().any(|x| x.as_i64().unwrap() < 0))
        .unwrap();
    let input2 = write_doc(&dir, "a2m.json", &doc);
    let second = run(&[
        "mutate",
        "--input",
        input2.to_str().unwrap(),
        "--pres",
        "mut1",
        "--summand",
        &back_idx.to_string(),
        "--format",
        "json",
    ]);
    assert_eq!(second.status.code(), Some(0));
    let v2: serde_json::Value = serde_json::from_str(&stdout(&second)).unwrap();
    let mut rows: Vec<Vec<i64>> = v2["silting"]["g_matrix"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            r.as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_i64().unwrap())
                .collect()
        })
        .collect();
    rows.sort();
    assert_eq!(rows, vec![vec![0, 1], vec![1, 0]]);
}

#[test]
fn complete_commands_report() {
    let dir = tempdir();
    let input = write_doc(&dir, "a2.json", &a2_doc());
    let out = run(&[
        "complete",
        "--input",
        input.to_str().unwrap(),
        "--module",
        "S0",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // S_0 completes to S_0 + P_0 with dims (2, 1)
    assert_eq!(v["dims"], serde_json::json!([2, 1]));
    let both = run(&[
        "complete",
        "--input",
        input.to_str().unwrap(),
        "--module",
        "S0",
        "--pres",
        "T0",
    ]);
    assert_eq!(both.status.code(), Some(2));
}

#[test]
fn decompose_reports_summands() {
    let dir = tempdir();
    let input = write_doc(&dir, "a2.json", &a2_doc());
    let out = run(&[
        "decompose",
        "--input",
        input.to_str().unwrap(),
        "--pres",
        "T0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("2 indecomposable"));
}

#[test]
fn field_override_accepts_rationals() {
    let dir = tempdir();
    let input = write_doc(&dir, "a2.json", &a2_doc());
    let out = run(&[
        "graph",
        "--input",
        input.to_str().unwrap(),
        "--field",
        "Q",
        "--format",
        "dot",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let plain = run(&[
        "graph",
        "--input",
        input.to_str().unwrap(),
        "--format",
        "dot",
    ]);
    assert_eq!(stdout(&out), stdout(&plain));
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "silting-cli-{}-{:?}",
        std::process::id(),
        std::thread::current().id()
    ));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
