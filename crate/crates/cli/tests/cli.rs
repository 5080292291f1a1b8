use std::path::PathBuf;
use std::process::{Command, Output};

use cluster_core::exchange::ExchangeMatrix;
use cluster_core::pattern::{initial_seed, PrincipalSeed};
use serde_json::Value;

const A2: &str = "[[0,1],[-1,0]]";
const B2: &str = "[[0,1],[-2,0]]";
const G2: &str = "[[0,1],[-3,0]]";

fn cluster(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cluster"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn seed_after(b: &str, path: &str) -> PrincipalSeed {
    let o = cluster(&["mutate", "--b", b, "--path", path]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    PrincipalSeed::from_json(&serde_json::from_str::<Value>(&stdout(&o)).unwrap()).unwrap()
}

fn matrix(s: &str) -> ExchangeMatrix {
    ExchangeMatrix::new(serde_json::from_str(s).unwrap()).unwrap()
}

#[test]
fn a2_pentagon_is_a_transposition() {
    let s = seed_after(A2, "12121");
    assert_eq!(s, initial_seed(&matrix(A2)).apply_permutation(&[1, 0]).unwrap());
    assert_eq!(s.path, vec![0, 1, 0, 1, 0]);
}

#[test]
fn empty_path_is_initial() {
    assert_eq!(seed_after(A2, ""), initial_seed(&matrix(A2)));
}

#[test]
fn b2_period_six() {
    assert_eq!(seed_after(B2, "1,2,1,2,1,2"), initial_seed(&matrix(B2)));
}

#[test]
fn emit_vars_and_free_semifield() {
    let o = cluster(&["mutate", "--b", A2, "--path", "1", "--emit", "vars"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cluster_variables"][0], "x1^-1*(x2 + y1)");
    let o = cluster(&["mutate", "--b", A2, "--path", "12121", "--semifield", "free"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["x"][0]["num"], "x2");
    assert_eq!(v["x"][1]["num"], "x1");
}

#[test]
fn malformed_input_exits_2() {
    assert_eq!(code(&cluster(&["mutate", "--b", "[[0,1],[1,0]]"])), 2);
    assert_eq!(code(&cluster(&["mutate", "--b", "[[0,1"])), 2);
    assert_eq!(code(&cluster(&["mutate", "--b", A2, "--path", "13"])), 2);
    assert_eq!(code(&cluster(&["mutate"])), 2);
    assert_eq!(code(&cluster(&["frobnicate"])), 2);
}

#[test]
fn mutation_budget_exits_3() {
    let o = cluster(&["mutate", "--b", "[[0,3],[-3,0]]", "--path", "12121212", "--max-terms", "10"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn enumerate_counts() {
    let o = cluster(&["enumerate", "--b", G2]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "8 seeds, 8 cluster variables, complete");
    let o = cluster(&["enumerate", "--b", "[[0]]"]);
    assert_eq!(stdout(&o).trim(), "2 seeds, 2 cluster variables, complete");
    let o = cluster(&["enumerate", "--b", "[[0,-2],[2,0]]", "--budget", "40"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).trim().ends_with("incomplete"));
}

#[test]
fn enumerate_exports() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("enumerate_exports");
    std::fs::create_dir_all(&dir).unwrap();
    let (dot, svg, json) = (dir.join("b2.dot"), dir.join("b2.svg"), dir.join("b2.json"));
    let o = cluster(&[
        "enumerate",
        "--b",
        B2,
        "--dot",
        dot.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let dot = std::fs::read_to_string(dot).unwrap();
    assert!(dot.starts_with("graph exchange {"));
    assert_eq!(dot.matches(" -- ").count(), 6);
    assert!(std::fs::read_to_string(svg).unwrap().contains("<svg"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(v["seed_count"], 6);
    let o = cluster(&[
        "enumerate",
        "--b",
        "[[0,1,0],[-1,0,1],[0,-1,0]]",
        "--svg",
        dir.join("a3.svg").to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn classify_labels() {
    for (b, label) in [
        (A2, "A2"),
        (B2, "B2"),
        (G2, "G2"),
        ("[[0,2],[-2,0]]", "infinite"),
        ("[[0,0],[0,0]]", "A1 x A1"),
    ] {
        let o = cluster(&["classify", "--b", b]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o).trim(), label);
    }
    let o = cluster(&["classify", "--b", "[[0,1,-1],[-1,0,1],[1,-1,0]]", "--budget", "1"]);
    assert_eq!(code(&o), 3);
    assert_eq!(stdout(&o).trim(), "unknown (budget)");
    assert_eq!(stdout(&cluster(&["classify", "--b", "[[0,1,-1],[-1,0,1],[1,-1,0]]"])).trim(), "A3");
}

#[test]
fn verify_reports() {
    let o = cluster(&["verify", "--b", A2]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["walks"], 20);
    let o = cluster(&["verify", "--b", A2, "--walks", "0"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((code(&o), v["seeds_checked"].as_u64()), (0, Some(0)));
    let o = cluster(&[
        "verify",
        "--b",
        "[[0,1,-1],[-1,0,1],[1,-1,0]]",
        "--walks",
        "10",
        "--depth",
        "6",
        "--seed",
        "5",
    ]);
    assert_eq!(code(&o), 0);
    let again = cluster(&[
        "verify",
        "--b",
        "[[0,1,-1],[-1,0,1],[1,-1,0]]",
        "--walks",
        "10",
        "--depth",
        "6",
        "--seed",
        "5",
    ]);
    assert_eq!(stdout(&o), stdout(&again));
}

#[test]
fn examples_replay() {
    for name in ["a2", "gr25", "gca-b2"] {
        let o = cluster(&["examples", name]);
        assert_eq!(code(&o), 0);
        assert!(stdout(&o).starts_with(&format!("PASS {name}")));
    }
    let o = cluster(&["examples", "--all"]);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 6);
    assert_eq!(code(&cluster(&["examples", "e8"])), 2);
}

#[test]
fn matrix_file_and_gca_data() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("matrix_file");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("gca.json");
    std::fs::write(&file, r#"{"b": [[0,-1],[1,0]], "data": {"r": [2,1], "z": [[1,"z",1],[1,1]]}}"#).unwrap();
    let o = cluster(&["mutate", "--matrix", file.to_str().unwrap(), "--path", "121212"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["g"], serde_json::json!([[1, 0], [0, 1]]));
    let o = cluster(&[
        "mutate",
        "--b",
        "[[0,-1],[1,0]]",
        "--data",
        r#"{"r":[2,1],"z":[[1,"z",1],[1,1]]}"#,
        "--emit",
        "vars",
    ]);
    assert_eq!(code(&o), 0);
}
