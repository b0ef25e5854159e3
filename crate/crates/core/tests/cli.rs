mod common;

use std::path::PathBuf;
use std::process::{Command, Output};

use common::*;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_frobcell"))
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("cli-{name}"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn emit(name: &str, builtin: &str, params: &[&str]) -> PathBuf {
    let path = scratch(name);
    let mut args = vec!["builtin", builtin];
    for p in params {
        args.extend(["--param", p]);
    }
    args.extend(["--emit", path.to_str().unwrap()]);
    let out = run(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn write_spec(name: &str, spec: &frobcell::io::SpecFile) -> PathBuf {
    let path = scratch(name);
    std::fs::write(&path, serde_json::to_string_pretty(spec).unwrap()).unwrap();
    path
}

#[test]
fn koenig_xi_report() {
    let path = emit("kx.json", "koenig-xi", &[]);
    let out = run(&["report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("none of the cell modules W_C is projective"), "{text}");
    assert!(text.contains("D(b) = (1/2)*c"));
}

#[test]
fn machine_report_is_json() {
    let path = emit("m2.json", "matrix", &["n=2"]);
    let out = run(&["report", path.to_str().unwrap(), "--machine"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["stage"], "complete");
    assert_eq!(value["cells"][0]["k"]["value"], "1");
    assert_eq!(value["exit_code"], 0);
}

#[test]
fn machine_and_human_conflict() {
    let path = emit("conflict.json", "dual-numbers", &[]);
    let out = run(&["report", path.to_str().unwrap(), "--machine", "--human"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn prime_field_builtin() {
    let out = run(&["builtin", "koenig-xi", "--param", "p=7", "--param", "lambda=3"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["field"]["type"], "prime");
    assert_eq!(value["field"]["p"], 7);
    let bad = run(&["builtin", "koenig-xi", "--param", "p=8"]);
    assert_eq!(bad.status.code(), Some(2));
    let bad = run(&["builtin", "koenig-xi", "--param", "lambda=1"]);
    assert_eq!(bad.status.code(), Some(2));
    let bad = run(&["builtin", "matrix", "--param", "lambda=3"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn validate_exit_codes() {
    let good = emit("valid.json", "koenig-xi", &["lambda=-1/3"]);
    assert_eq!(run(&["validate", good.to_str().unwrap()]).status.code(), Some(0));

    let mut spec = spec_of(&koenig_xi_q(q(2)));
    spec.structure_constants.iter_mut().find(|e| (e.0, e.1, e.2) == (3, 2, 5)).unwrap().2 = 1;
    let path = write_spec("assoc.json", &spec);
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("associativity: (c, b, d)"), "{}", stdout(&out));
    assert_eq!(run(&["report", path.to_str().unwrap()]).status.code(), Some(1));

    let mut spec = spec_of(&koenig_xi_q(q(2)));
    spec.index_map[2].3 = spec.index_map[1].3;
    let path = write_spec("index.json", &spec);
    assert_eq!(run(&["validate", path.to_str().unwrap()]).status.code(), Some(2));

    let path = scratch("broken.json");
    std::fs::write(&path, "{\"field\": ").unwrap();
    let out = run(&["report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    assert_eq!(run(&["validate", scratch("missing.json").to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn identities_listing() {
    let path = emit("ids.json", "dual-numbers", &[]);
    let out = run(&["identities", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for n in 1..=12 {
        assert!(text.contains(&format!("({n})")), "{text}");
    }
    assert!(!text.contains("FAIL"));
}

#[test]
fn oracle_subcommand() {
    let m2 = emit("oracle-m2.json", "matrix", &[]);
    let out = run(&["oracle", m2.to_str().unwrap(), "--cell", "1", "--flavor", "d"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("averaging oracle: projective"));

    let dn = emit("oracle-dn.json", "dual-numbers", &[]);
    let out = run(&["oracle", dn.to_str().unwrap(), "--cell", "x"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("splitting oracle: not projective"));

    assert_eq!(run(&["oracle", dn.to_str().unwrap(), "--cell", "7"]).status.code(), Some(2));
}
