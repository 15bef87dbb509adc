use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.path().join(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }
}

fn abd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abd"))
        .args(args)
        .env_remove("ABD_BUDGET")
        .output()
        .unwrap()
}

fn s(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

const OR_INSTANCE: &str = "fn or 2 0111\nkb (or x q)\nhyp x\nquery q\n";

#[test]
fn solve_and_verify() {
    let d = Dir::new();
    let p = d.file("p", OR_INSTANCE);
    let out = abd(&["--json", "solve", s(&p)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["explanation"], "!x");
    assert_eq!(v["found"], true);
    assert!(v.get("timeMs").is_none());

    let out = abd(&["--json", "verify", s(&p), "x"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["isExplanation"], false);
    assert_eq!(v["satisfiableWithE"], true);
    assert_eq!(v["entailsManifestation"], false);

    let out = abd(&["--json", "verify", s(&p), "!x"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["isExplanation"], true);
}

#[test]
fn no_explanation_exits_one() {
    let d = Dir::new();
    let p = d.file("p", "fn or 2 0111\nkb (or q r)\nquery q\n");
    let out = abd(&["solve", s(&p)]);
    assert_eq!(out.status.code(), Some(1));
    let out = abd(&["--json", "solve", "--method", "oracle", s(&p)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["found"], false);
}

#[test]
fn count_and_enumerate() {
    let d = Dir::new();
    let p = d.file("p", "fn xor3 3 01101001\nkb (xor3 x y q)\nhyp x y\nquery q\n");
    let v = json(&abd(&["--json", "count", s(&p)]));
    assert_eq!(v["count"], 2);
    assert_eq!(v["exact"], true);
    let v = json(&abd(&["--json", "count", "--method", "oracle", s(&p)]));
    assert_eq!(v["count"], 2);

    let out = abd(&["enumerate", s(&p)]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "!x !y\nx y\n");
    let out = abd(&["enumerate", "--method", "oracle", s(&p)]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "!x !y\nx y\n");
}

#[test]
fn payloads_are_deterministic() {
    let d = Dir::new();
    let p = d.file("p", "fn h 2 0010\nkb (h a q)\nkb (h (h b c) d)\nhyp a b c d\nquery !q\n");
    let runs: Vec<Vec<u8>> = [
        vec!["--json", "solve", s(&p)],
        vec!["--json", "--sequential", "solve", s(&p)],
    ]
    .iter()
    .map(|a| abd(a).stdout)
    .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(abd(&["--json", "count", s(&p)]).stdout, abd(&["--json", "count", s(&p)]).stdout);
}

#[test]
fn timing_is_opt_in() {
    let d = Dir::new();
    let p = d.file("p", OR_INSTANCE);
    let v = json(&abd(&["--json", "--timing", "solve", s(&p)]));
    assert!(v["timeMs"].is_number());
}

#[test]
fn identify_and_classify() {
    let d = Dir::new();
    let h = d.file("h", "fn h 2 0010\n");
    let or = d.file("or", "fn or 2 0111\n");
    let bf = d.file("bf", "fn and 2 0001\nfn not 1 10\n");
    assert_eq!(json(&abd(&["--json", "identify", s(&h)]))["clone"], "S1");
    assert_eq!(json(&abd(&["--json", "identify", s(&or)]))["clone"], "V2");
    assert_eq!(json(&abd(&["--json", "identify", s(&bf)]))["clone"], "BF");

    let v = json(&abd(&["--json", "classify", s(&or), "--variant", "T"]));
    assert_eq!(v["rows"][0]["label"], "NP_COMPLETE");
    let v = json(&abd(&["--json", "classify", s(&or), "--variant", "Q"]));
    assert_eq!(v["rows"][0]["label"], "IN_L");
    let v = json(&abd(&["--json", "classify", s(&or), "--counting"]));
    assert_eq!(v["rows"][0]["label"], "SHARP_P_COMPLETE");
    assert_eq!(json(&abd(&["--json", "classify", s(&or)]))["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn generate_writes_instance_and_sidecar() {
    let d = Dir::new();
    let or = d.file("or", "fn or 2 0111\n");
    let src = d.file("phi", "1 2 0\n");
    let out = d.path("inst");
    let r = abd(&["--json", "generate", "--reduction", "pos2sat", "--base", s(&or), "--source", s(&src), "--out", s(&out)]);
    assert_eq!(r.status.code(), Some(0), "{}", String::from_utf8_lossy(&r.stderr));
    let side: Value = serde_json::from_str(&fs::read_to_string(d.path("inst.json")).unwrap()).unwrap();
    assert_eq!(side["expectedCount"], 1);
    assert_eq!(side["formulaModels"], 3);
    assert_eq!(side["n"], 2);
    assert_eq!(json(&r), side);
    let c = json(&abd(&["--json", "count", s(&out)]));
    assert_eq!(c["count"], 1);

    let x3 = d.file("x3", "fn xor3 3 01101001\n");
    let sys = d.file("sys", "vars 2\neq 1 = 1\neq 1 = 0\n");
    let side = d.path("side");
    let r = abd(&[
        "--json", "generate", "--reduction", "linsys", "--base", s(&x3), "--source", s(&sys),
        "--out", s(&d.path("l")), "--sidecar", s(&side),
    ]);
    assert_eq!(r.status.code(), Some(0));
    assert_eq!(json(&r)["expectSolvable"], true);
    assert_eq!(abd(&["solve", s(&d.path("l"))]).status.code(), Some(0));

    let maj = d.file("maj", "fn maj 3 00010111\n");
    let bad = d.file("bad", "1 1 2 0\n");
    let r = abd(&["generate", "--reduction", "2in3", "--base", s(&maj), "--source", s(&bad), "--out", s(&d.path("z"))]);
    assert_eq!(r.status.code(), Some(2));
}

#[test]
fn seeded_generation_is_reproducible() {
    let d = Dir::new();
    let x3 = d.file("x3", "fn xor3 3 01101001\n");
    for name in ["a", "b"] {
        let r = abd(&["generate", "--reduction", "linsys", "--base", s(&x3), "--seed", "7", "--out", s(&d.path(name))]);
        assert_eq!(r.status.code(), Some(0));
    }
    assert_eq!(fs::read(d.path("a")).unwrap(), fs::read(d.path("b")).unwrap());
    assert_eq!(fs::read(d.path("a.json")).unwrap(), fs::read(d.path("b.json")).unwrap());
}

#[test]
fn representations() {
    let d = Dir::new();
    let h = d.file("h", "fn h 2 0010\n");
    let out = abd(&["repr", s(&h), "fn and 2 0001"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "(h x (h x y))\n");

    let or = d.file("or", "fn or 2 0111\n");
    let t = d.file("t", "fn or 2 0111\n");
    assert_eq!(String::from_utf8(abd(&["repr", s(&or), s(&t)]).stdout).unwrap(), "(or x y)\n");
    assert_eq!(abd(&["repr", s(&or), "fn and 2 0001"]).status.code(), Some(1));
}

#[test]
fn error_codes() {
    let d = Dir::new();
    let broken = d.file("broken", "fn or 2 0111\nkb (or x\nquery q\n");
    assert_eq!(abd(&["solve", s(&broken)]).status.code(), Some(2));
    let invalid = d.file("invalid", "fn or 2 0111\nkb (or x q)\nhyp z\nquery q\n");
    assert_eq!(abd(&["solve", s(&invalid)]).status.code(), Some(2));
    assert_eq!(abd(&["solve", s(&d.path("missing"))]).status.code(), Some(2));

    let p = d.file("p", "fn xor3 3 01101001\nkb (xor3 x y q)\nhyp x y\nquery q\n");
    let out = abd(&["--json", "solve", "--method", "general", "--budget", "1", s(&p)]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["exitCode"], 3);
    let out = Command::new(env!("CARGO_BIN_EXE_abd"))
        .args(["solve", "--method", "general", s(&p)])
        .env("ABD_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(abd(&["solve", "--method", "affine", s(&d.file("h", "fn h 2 0010\nkb (h x q)\nhyp x\nquery q\n"))]).status.code(), Some(2));
}
