use std::process::{Command, Output};

use serde_json::Value;

fn hhh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hhh")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn compute_trefoil() {
    let out = hhh(&["compute", "-n", "2", "-w", "1 1 1"]);
    assert_eq!(out.status.code(), Some(0));
    let d = json(&out);
    assert_eq!(d["schema"], 1);
    assert_eq!(d["certified"], true);
    assert_eq!(d["writhe"], 3);
    assert_eq!(d["reduced"], serde_json::json!([[1, -1, 2, 1], [1, 1, -2, 1], [2, -1, 0, 1]]));
    assert!(d["normalization"]["global_rule"].is_string());
}

#[test]
fn compute_unknot_and_figure_eight() {
    let d = json(&hhh(&["compute", "-n", "1", "-w", ""]));
    assert_eq!(d["reduced"], serde_json::json!([[0, 0, 0, 1]]));
    let out = hhh(&["compute", "-n", "3", "-w", "1 -2 1 -2", "--exact"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["reduced"].as_array().unwrap().len(), 5);
}

#[test]
fn uncertified_tail_exit_code() {
    let args = ["compute", "-n", "2", "-w", "1 1 1 1 1", "--window", "10"];
    assert_eq!(hhh(&args).status.code(), Some(1));
    let mut partial = args.to_vec();
    partial.push("--allow-partial");
    let out = hhh(&partial);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["certified"], false);
}

#[test]
fn invalid_input_is_a_computation_error() {
    assert_eq!(hhh(&["compute", "-n", "2", "-w", "1 3"]).status.code(), Some(1));
    assert_eq!(hhh(&["compute", "-n", "2", "-w", "1 x"]).status.code(), Some(1));
    assert_eq!(hhh(&["compute", "-n", "2", "-w", "1", "--window", "0"]).status.code(), Some(1));
}

#[test]
fn verify_commands_pass() {
    for args in [
        vec!["verify", "symmetry", "-n", "2", "-w", "1 1 1"],
        vec!["verify", "torus", "--n", "2", "--k", "1"],
        vec!["verify", "euler", "-n", "2", "-w", "1 1"],
        vec!["verify", "markov", "-n", "2", "-w", "-1 -1 -1"],
        vec!["verify", "moy", "--n", "2", "--cutoff", "12"],
    ] {
        let out = hhh(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["pass"], true);
        assert!(String::from_utf8_lossy(&out.stderr).contains("PASS"));
    }
}

#[test]
fn symmetry_of_a_link_is_an_error() {
    assert_eq!(hhh(&["verify", "symmetry", "-n", "2", "-w", "1 1"]).status.code(), Some(1));
}

#[test]
fn oracles() {
    let d = json(&hhh(&["oracle", "hilb", "--n", "1", "--k", "5"]));
    assert_eq!(d["series"], serde_json::json!([[0, 0, 0, 1], [1, 0, 0, 1]]));
    let d = json(&hhh(&["oracle", "hilb", "--n", "2", "--k", "1", "--cutoff", "20"]));
    assert_eq!(d["series"].as_array().unwrap().len(), 6);
    let d = json(&hhh(&["oracle", "homfly", "-n", "2", "-w", "1 1 1"]));
    assert_eq!(d["terms"], serde_json::json!([[2, -2, 1], [2, 2, 1], [4, 0, -1]]));
}

#[test]
fn json_file_matches_stdout_and_threads_do_not_matter() {
    let dir = std::env::temp_dir().join(format!("hhh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut outputs = Vec::new();
    for t in ["1", "4"] {
        let path = dir.join(format!("out{t}.json"));
        let out = hhh(&["--threads", t, "--json", path.to_str().unwrap(), "compute", "-n", "3", "-w", "1 -2 1 -2"]);
        assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
        outputs.push(out.stdout);
    }
    assert_eq!(outputs[0], outputs[1]);
    std::fs::remove_dir_all(dir).ok();
}
