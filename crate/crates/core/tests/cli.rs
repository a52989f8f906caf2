use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_klevel"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = bin().args(args).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (out.status.code().unwrap(), v)
}

fn raw(args: &[&str]) -> String {
    String::from_utf8(bin().args(args).output().unwrap().stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn fixtures_match_generated_instances() {
    for name in ["buchheim", "bilevel"] {
        let on_disk = std::fs::read_to_string(fixture(&format!("{name}.json"))).unwrap();
        assert_eq!(raw(&["gen", "--fixture", name]), on_disk, "{name}");
    }
}

#[test]
fn solve_buchheim() {
    let (code, v) = run(&["solve", path(&fixture("buchheim.json"))]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "INFEASIBLE");
    assert_eq!(v["value"], "+inf");
}

#[test]
fn bilevel_commands() {
    let f = fixture("bilevel.json");
    let (_, v) = run(&["solve", path(&f)]);
    assert_eq!(v["status"], "FINITE");
    assert_eq!(v["value"], "-1");
    assert_eq!(v["witness"], serde_json::json!(["1", "1"]));

    let (code, v) = run(&["decide-val", path(&f), "--t", "-3/2"]);
    assert_eq!((code, v["answer"].clone()), (0, Value::Bool(false)));
    let (_, v) = run(&["decide-val", path(&f), "--t", "-1"]);
    assert_eq!(v["answer"], true);
    let (_, v) = run(&["decide-unb", path(&f)]);
    assert_eq!(v["answer"], false);
    let (_, v) = run(&["feasible", path(&f)]);
    assert_eq!(v["answer"], true);
    let (_, v) = run(&["check-point", path(&f), "--point", "1,1"]);
    assert_eq!(v, serde_json::json!({"feasible": true, "optimal": true}));
    let (_, v) = run(&["check-point", path(&f), "--point", "0,1"]);
    assert_eq!(v, serde_json::json!({"feasible": false, "optimal": false}));
    let (_, v) = run(&["value-functions", path(&f)]);
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["level"], 2);
}

#[test]
fn scale_by_one_is_byte_identical() {
    let f = fixture("bilevel.json");
    let on_disk = std::fs::read_to_string(&f).unwrap();
    assert_eq!(raw(&["transform", path(&f), "--op", "scale", "--lambda", "1/1"]), on_disk);
}

#[test]
fn gadget_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("base.json");
    let inst = klevel::oracle::examples::simple_gadget_base(klevel::exactnum::int(-1));
    klevel::io::write_instance(&base, &inst).unwrap();
    let out = dir.path().join("gadget.json");
    std::fs::write(&out, raw(&["transform", path(&base), "--op", "gadget"])).unwrap();
    let (code, v) = run(&["decide-unb", path(&out)]);
    assert_eq!(code, 0);
    assert_eq!(v["answer"], true);

    let (code, v) = run(&["transform", path(&fixture("buchheim.json")), "--op", "forward"]);
    assert_eq!(code, 0);
    assert_eq!(v["k"], 3);
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"k\": 1").unwrap();
    let f = fixture("bilevel.json");
    let leader_row = dir.path().join("leader.json");
    klevel::io::write_instance(&leader_row, &klevel::oracle::examples::leader_row_example())
        .unwrap();
    for args in [
        vec!["solve", path(&bad)],
        vec!["solve", "/nonexistent/file.json"],
        vec!["transform", path(&f), "--op", "scale", "--lambda", "0"],
        vec!["transform", path(&f), "--op", "scale", "--lambda", "-2"],
        vec!["transform", path(&f), "--op", "scale"],
        vec!["transform", path(&leader_row), "--op", "gadget"],
        vec!["check-point", path(&f), "--point", "1"],
        vec!["decide-val", path(&f), "--t", "0.5"],
        vec!["demo-buchheim", "--t", "-1"],
        vec!["gen", "--k", "2", "--dims", "1"],
        vec!["frobnicate"],
    ] {
        let (code, v) = run(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(v["error"].is_string(), "{args:?}");
    }
}

#[test]
fn project_genpoly_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.json");
    std::fs::write(&p, r#"{"dim":2,"weak":[[["1","0"],"0"]],"strict":[[["-1","1"],"0"]]}"#).unwrap();
    let (code, v) = run(&["project", path(&p), "--keep", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v, serde_json::json!({"dim": 1, "weak": [], "strict": [[["1"], "0"]]}));
    let (code, _) = run(&["project", path(&p), "--keep", "5"]);
    assert_eq!(code, 2);
}

#[test]
fn demo_reports_mismatch() {
    for t in ["0", "1/2", "1"] {
        let (code, v) = run(&["demo-buchheim", "--t", t]);
        assert_eq!(code, 0);
        assert_eq!(v["mismatch"], true);
        assert_eq!(v["exact"]["status"], "INFEASIBLE");
        assert_eq!(v["certificate_point"], serde_json::json!(["0", "0", "0", "1"]));
    }
}

#[test]
fn gen_is_deterministic_and_round_trips() {
    let args = ["gen", "--seed", "42", "--k", "3", "--dims", "1,2,1", "--rows", "1,1,2", "--require", "C1,C2"];
    let a = raw(&args);
    assert_eq!(a, raw(&args));
    let inst = klevel::io::instance_from_json(&a).unwrap();
    let report = klevel::transforms::check_conditions(&inst);
    assert!(report.c1 && report.c2, "{:?}", report.violations);
    assert_eq!(klevel::io::instance_to_json(&inst) + "\n", a);

    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("g.json");
    std::fs::write(&f, &a).unwrap();
    assert_eq!(raw(&["solve", path(&f)]), raw(&["solve", path(&f)]));
}
