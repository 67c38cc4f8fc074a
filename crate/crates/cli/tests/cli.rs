use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cuspidal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap_or(-1)
}

fn json(args: &[&str]) -> Value {
    serde_json::from_slice(&run(args).stdout).expect("JSON report on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cuspidal-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_examples() {
    assert_eq!(code(&["verify", "--n", "2", "--R", "4"]), 0);
    assert_eq!(
        code(&["verify", "--n", "2", "--dim", "3", "--seed", "7"]),
        0
    );
    assert_eq!(code(&["verify", "--n", "1"]), 2);
    assert_eq!(
        code(&["verify", "--n", "3", "--R", "2", "--a", "1/4,1/3,1/5"]),
        0
    );
    assert_eq!(code(&["verify", "--n", "3", "--a", "1/2,1/3,1/5"]), 2);
    let report = json(&["verify", "--dim", "2", "--seed", "9", "--R", "3"]);
    assert_eq!(report["passed"], true);
    assert_eq!(report["seed"], 9);
    assert_eq!(report["a"], serde_json::json!(["1/3", "1/5"]));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&["verify", "--a", "1,1/5"]), 2);
    assert_eq!(code(&["verify", "--a", "1/3"]), 2);
    assert_eq!(code(&["verify", "--dim", "0"]), 2);
    assert_eq!(code(&["verify", "--R", "0"]), 2);
    assert_eq!(code(&["verify", "--inject-fault", "X[e9]@0,0"]), 2);
    assert_eq!(code(&["verify", "--inject-fault", "X[2e1]@9,9"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["verify", "--bogus"]), 2);
    assert_eq!(
        code(&["hom", "/nonexistent/a.json", "/nonexistent/b.json"]),
        2
    );
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn sl2_examples() {
    assert_eq!(code(&["sl2", "--dim", "3", "--seed", "1", "--R", "3"]), 0);
    let report = json(&["sl2", "--dim", "1"]);
    assert_eq!(report["passed"], true);
    assert_eq!(report["pairs"], 20);
    let faulty = json(&["sl2", "--dim", "1", "--inject-fault"]);
    assert_eq!(faulty["passed"], false);
    assert_eq!(code(&["sl2", "--dim", "1", "--inject-fault"]), 1);
}

#[test]
fn reconstruct_examples() {
    let out = run(&["reconstruct", "--dim", "2", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("isomorphic: true"));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["isomorphic"], true);
    assert_eq!(report["raising_solution"]["holds"], true);
    assert_eq!(report["lowering_solution"]["holds"], true);
    assert_eq!(json(&["reconstruct", "--dim", "1"])["isomorphic"], true);
    assert_eq!(code(&["reconstruct", "--n", "3"]), 2);
}

#[test]
fn ext_demo_examples() {
    let two = json(&["ext-demo", "--n", "2", "--R", "2"]);
    assert_eq!(two["families"], 2);
    let three = json(&["ext-demo", "--n", "3", "--R", "2"]);
    assert_eq!(three["families"], 3);
    let out = run(&["ext-demo", "--R", "2"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("weight: true, semisimple witness"));
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["verify", "--dim", "3", "--seed", "5", "--R", "3"],
        vec!["sl2", "--seed", "2", "--R", "2"],
        vec!["reconstruct", "--dim", "3", "--seed", "1", "--R", "3"],
    ] {
        let first = run(&args).stdout;
        let second = Command::new(env!("CARGO_BIN_EXE_cuspidal"))
            .args(&args)
            .env("CUSPIDAL_THREADS", "1")
            .output()
            .unwrap()
            .stdout;
        assert_eq!(first, second, "{args:?}");
    }
}

#[test]
fn thread_variable_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_cuspidal"))
        .args(["verify", "--R", "2"])
        .env("CUSPIDAL_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_and_hom() {
    let a = scratch("a.json");
    let b = scratch("b.json");
    let n = scratch("n.json");
    let opts = ["--R", "2", "--dim", "2", "--seed", "3"];
    let gen = |path: &PathBuf, extra: &[&str]| {
        let mut args = vec!["gen", "--out", path.to_str().unwrap()];
        args.extend(extra);
        assert_eq!(code(&args), 0);
    };
    gen(&a, &opts);
    gen(&b, &opts);
    gen(&n, &["--R", "2"]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let doc: Value = serde_json::from_slice(&fs::read(&a).unwrap()).unwrap();
    assert_eq!(doc["R"], 2);
    let hom = json(&["hom", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(hom["isomorphic"], true);
    assert!(hom["dim"].as_u64().unwrap() >= 1);
    let nn = json(&["hom", n.to_str().unwrap(), n.to_str().unwrap()]);
    assert_eq!(nn["dim"], 1);
    let cross = json(&["hom", n.to_str().unwrap(), a.to_str().unwrap()]);
    assert_eq!(cross["isomorphic"], false);
}

#[test]
fn out_file_receives_the_report() {
    let path = scratch("verify.json");
    let out = run(&["verify", "--R", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("relations:"));
    let report: Value = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
    assert_eq!(report["command"], "verify");
}
