use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name);
    p.to_string_lossy().into_owned()
}

fn klr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klr")).args(args).env_remove("KLR_CACHE_DIR").output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn write_tmp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn check_shipped_corpus() {
    let (c1, c2, c3) = (corpus("c1.json"), corpus("c2.json"), corpus("c3.json"));
    let o = klr(&["--corpus", &c1, "--corpus", &c2, "--corpus", &c3, "check"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert!(v["modules"].as_array().unwrap().len() >= 15);
}

#[test]
fn check_locates_planted_defect() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_tmp(
        &dir,
        "bad.json",
        r#"{"field":"Q","index_set":[1,2],"q_polys":{"1,2":[["1",[1,0]],["-1",[0,1]]]},
            "modules":[{"name":"D","beta":{"1":1,"2":1},"dim":2,"words":[[1,2],[2,1]],
                        "x":[[],[]],"tau":[[[0,1,"1"],[1,0,"1"]]]}]}"#,
    );
    let o = klr(&["--corpus", &bad, "check"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let violations = v["modules"][0]["violations"].as_array().unwrap();
    assert!(violations.contains(&Value::from("tau_square[1]")));
    // other commands reject the file outright
    assert_eq!(klr(&["--corpus", &bad, "verify", "--all-pairs"]).status.code(), Some(2));
}

#[test]
fn check_empty_and_malformed() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write_tmp(&dir, "empty.json", r#"{"field":"Q","index_set":[1]}"#);
    let o = klr(&["--corpus", &empty, "check"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["modules"], Value::Array(vec![]));
    let broken = write_tmp(&dir, "broken.json", "{\n  \"field\": \"Q\",\n  \"index_set\": [1,\n}");
    let o = klr(&["--corpus", &broken, "check"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
    assert_eq!(klr(&["check"]).status.code(), Some(2));
    assert_eq!(klr(&["--corpus", "/nonexistent.json", "check"]).status.code(), Some(2));
}

#[test]
fn conv_writes_modules() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("l1l2.json");
    let c2 = corpus("c2.json");
    let o = klr(&["--corpus", &c2, "conv", "L1", "L2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let m: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(m["dim"], 2);
    assert_eq!(m["conv_of"], serde_json::json!(["L1", "L2"]));

    let o = klr(&["--corpus", &c2, "conv", "1", "L12"]);
    let mut with_unit = json(&o);
    let src: Value = serde_json::from_str(&std::fs::read_to_string(&c2).unwrap()).unwrap();
    let mut l12 = src["modules"].as_array().unwrap().iter().find(|m| m["name"] == "L12").unwrap().clone();
    for v in [&mut with_unit, &mut l12] {
        let o = v.as_object_mut().unwrap();
        o.remove("name");
        o.remove("conv_of");
    }
    assert_eq!(with_unit, l12);

    assert_eq!(klr(&["--corpus", &c2, "conv", "L1", "L9"]).status.code(), Some(2));
}

#[test]
fn rmatrix_reports() {
    let o = klr(&["--corpus", &corpus("c1.json"), "rmatrix", "L1", "L1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["s"], 0);
    assert_eq!(v["r_matrix"], serde_json::json!([["1", "0"], ["0", "1"]]));

    let v = json(&klr(&["--corpus", &corpus("c2.json"), "rmatrix", "L1", "L2"]));
    assert_eq!(v["rank"], 1);
    assert_eq!(v["image_words"], serde_json::json!([[1, 2]]));
    assert_eq!(v["pair"], serde_json::json!(["L1", "L2"]));

    let o = klr(&["--corpus", &corpus("c3.json"), "rmatrix", "L12", "L1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not symmetric"));
}

#[test]
fn verify_statuses() {
    let (c1, c2, c3) = (corpus("c1.json"), corpus("c2.json"), corpus("c3.json"));
    let o = klr(&["--corpus", &c1, "--corpus", &c2, "--corpus", &c3, "verify", "--all-pairs"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let status = |a: &str, b: &str, c: &str| -> String {
        v["results"]
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["pair"] == serde_json::json!([a, b]) && r["corpus"].as_str().unwrap().ends_with(c))
            .map(|r| r["status"].as_str().unwrap().to_string())
            .unwrap()
    };
    assert_eq!(status("L1", "L2", "c2.json"), "pass");
    assert_eq!(status("L1", "L21", "c2.json"), "pass");
    assert_eq!(status("L1", "L1", "c1.json"), "pass");
    assert_eq!(status("L1L2", "L2", "c2.json"), "precondition: m not simple");
    assert_eq!(status("L1", "L2", "c3.json"), "skipped: not symmetric");

    let o = klr(&["--corpus", &c2, "verify", "L1", "L2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["results"][0]["report"]["metrics"]["commute"], 0);
    assert_eq!(klr(&["--corpus", &c2, "verify", "L1"]).status.code(), Some(2));
}

#[test]
fn report_is_deterministic() {
    let (c1, c2) = (corpus("c1.json"), corpus("c2.json"));
    let a = klr(&["--corpus", &c1, "--corpus", &c2, "report"]);
    let b = klr(&["--corpus", &c1, "--corpus", &c2, "report"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["corpus_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn cache_dir_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let c1 = corpus("c1.json");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_klr"))
            .args(["--corpus", &c1, "report"])
            .env("KLR_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let second = run();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, klr(&["--corpus", &c1, "report"]).stdout);
}
