use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cfklab"))
        .args(args)
        .env_remove("CFKLAB_CATALOG_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

const BROKEN: &str = r#"{
  "name": "broken",
  "generators": [
    {"id": "a", "maslov": 0, "alexander": 0},
    {"id": "b", "maslov": -1, "alexander": 0},
    {"id": "c", "maslov": -2, "alexander": 0}
  ],
  "differential": [
    {"from": "a", "to": "b", "upower": 0},
    {"from": "b", "to": "c", "upower": 0}
  ]
}
"#;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn trefoil_profile_table() {
    let out = run(&["profile", "catalog:trefoil_right"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let p = &doc[0]["profile"];
    let expect = [
        ("d_untwisted_plus", "-3/2"),
        ("dtilde_untwisted_plus", "-2"),
        ("d_twisted_plus", "-1/2"),
        ("dtilde_twisted_plus", "0"),
        ("d_untwisted_minus", "1/2"),
        ("dtilde_untwisted_minus", "0"),
        ("d_twisted_minus", "3/2"),
        ("dtilde_twisted_minus", "2"),
    ];
    for (k, v) in expect {
        assert_eq!(p[k], v, "{k}");
    }
    assert_eq!(doc[0]["d_symmetric"], false);
}

#[test]
fn unknot_profile_has_zero_dtilde() {
    let out = run(&["profile", "catalog:unknot"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    for k in ["dtilde_untwisted_plus", "dtilde_twisted_plus", "dtilde_untwisted_minus", "dtilde_twisted_minus"] {
        assert_eq!(doc[0]["profile"][k], "0");
    }
    assert_eq!(doc[0]["d_symmetric"], true);
}

#[test]
fn broken_file_is_an_input_error_naming_the_violation() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "broken.cfk", BROKEN);
    let out = run(&["profile", &path]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json(&out);
    assert_eq!(doc[0]["status"], "input_error");
    assert!(doc[0]["error"].as_str().unwrap().contains("boundary squares"));

    let out = run(&["validate", &path]);
    assert_eq!(out.status.code(), Some(2));
    let kinds: Vec<String> = json(&out)[0]["violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["kind"].as_str().unwrap().to_string())
        .collect();
    assert!(kinds.contains(&"BoundarySquare".to_string()), "{kinds:?}");
}

#[test]
fn one_bad_input_does_not_abort_the_batch() {
    let out = run(&["profile", "catalog:trefoil_left", "missing.cfk", "catalog:figure8"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json(&out);
    let statuses: Vec<&str> = doc.as_array().unwrap().iter().map(|e| e["status"].as_str().unwrap()).collect();
    assert_eq!(statuses, ["ok", "input_error", "ok"]);
    assert_eq!(doc[0]["input"], "catalog:trefoil_left");
    assert_eq!(doc[2]["input"], "catalog:figure8");
}

#[test]
fn two_knot_examples() {
    let out = run(&["two-knot", "--qhs-d", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let q: Vec<&str> = ["d_sigma", "d_sigma_r", "d_sigma_bar", "d_sigma_bar_r"]
        .iter()
        .map(|k| doc["two_knot"][k].as_str().unwrap())
        .collect();
    assert_eq!(q, ["2", "-2", "2", "-2"]);
    assert_eq!(doc["obstructions"]["reversible"]["obstructed"], true);
    assert_eq!(doc["obstructions"]["negative_amphichiral"]["obstructed"], true);

    let zero = json(&run(&["two-knot", "--quadruple", "0", "0", "0", "0"]));
    for (_, o) in zero["obstructions"].as_object().unwrap() {
        assert_eq!(o["obstructed"], false);
    }

    let spin = json(&run(&["two-knot", "--quadruple", "0", "-2", "0", "-2"]));
    assert_eq!(spin["obstructions"]["d_symmetric_seifert"]["obstructed"], true);

    let t3 = json(&run(&["two-knot", "--fiber-d-plus", "1/2", "--fiber-d-minus", "1/2", "--b1", "3"]));
    assert_eq!(t3["two_knot"]["d_sigma"], "2");
}

#[test]
fn two_knot_usage_errors() {
    assert_eq!(run(&["two-knot"]).status.code(), Some(2));
    assert_eq!(run(&["two-knot", "--qhs-d", "1/0"]).status.code(), Some(2));
    assert_eq!(run(&["two-knot", "--fiber-d-plus", "1/2"]).status.code(), Some(2));
    assert_eq!(run(&["two-knot", "--qhs-d", "1", "--quadruple", "0", "0", "0", "0"]).status.code(), Some(2));
}

#[test]
fn stability_rounds_below_two_are_rejected() {
    assert_eq!(run(&["--stability-rounds", "1", "v0", "catalog:unknot"]).status.code(), Some(2));
    let out = run(&["v0", "catalog:trefoil_right", "--stability-rounds", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc[0]["v"], "1");
    assert_eq!(doc[0]["certificate"].as_array().unwrap().len(), 3);
}

#[test]
fn truncation_below_the_floor_is_an_input_error() {
    let out = run(&["v0", "catalog:trefoil_right", "--truncation", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)[0]["error"].as_str().unwrap().contains("below the safe floor"));
}

#[test]
fn cone_and_raw_commands() {
    let doc = json(&run(&["cone-d", "catalog:trefoil_left"]));
    // 2·V₀(mirror) − 1/2 with V₀(trefoil_right) = 1.
    assert_eq!(doc[0]["d_twisted"], "3/2");

    let out = run(&["twisted-d", "builtin:nonsplit_tower"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)[0]["twisted_complex_d"], "-1/2");

    let shown = run(&["catalog", "show", "nonsplit_tower"]);
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "raw.json", &String::from_utf8(shown.stdout).unwrap());
    assert_eq!(json(&run(&["twisted-d", &path]))[0]["twisted_complex_d"], "-1/2");
}

#[test]
fn catalog_round_trips_through_files() {
    let list = json(&run(&["catalog", "list"]));
    let dir = tempfile::tempdir().unwrap();
    for name in list["catalog"].as_array().unwrap() {
        let name = name.as_str().unwrap();
        let shown = run(&["catalog", "show", name]);
        assert_eq!(shown.status.code(), Some(0));
        let path = write(dir.path(), &format!("{name}.cfk"), &String::from_utf8(shown.stdout).unwrap());
        let from_file = json(&run(&["profile", &path]));
        let from_catalog = json(&run(&["profile", &format!("catalog:{name}")]));
        assert_eq!(from_file[0]["profile"], from_catalog[0]["profile"], "{name}");
    }
    assert_eq!(run(&["catalog", "show", "nope"]).status.code(), Some(2));
}

#[test]
fn check_all_over_catalog_and_corpora() {
    let out = run(&["check-all"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let raw = doc["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["input"] == "builtin:nonsplit_tower")
        .unwrap();
    assert_eq!(raw["twisted_complex_d"], "-1/2");
    assert_eq!(doc["summary"]["input_errors"], 0);

    let dir = tempfile::tempdir().unwrap();
    let good = String::from_utf8(run(&["catalog", "show", "trefoil_right"]).stdout).unwrap();
    write(dir.path(), "a_good.cfk", &good);
    let clean = Command::new(env!("CARGO_BIN_EXE_cfklab"))
        .arg("check-all")
        .env("CFKLAB_CATALOG_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(clean.status.code(), Some(0));
    assert_eq!(json(&clean)["summary"]["total"], doc["summary"]["total"].as_u64().unwrap() + 1);

    write(dir.path(), "b_broken.cfk", BROKEN);
    write(dir.path(), "c_garbage.json", "{ not json");
    let dirty = run(&["check-all", "--corpus", &dir.path().display().to_string()]);
    assert_eq!(dirty.status.code(), Some(2));
    assert_eq!(json(&dirty)["summary"]["input_errors"], 2);
}

#[test]
fn output_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let args = ["profile", "catalog:figure8", "catalog:whitehead_double_trefoil_model", "--out"];
    for p in [&a, &b] {
        let mut v: Vec<&str> = args.to_vec();
        let s = p.display().to_string();
        v.push(&s);
        assert_eq!(run(&v).status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert!(run(&["profile", "catalog:unknot", "--format", "table"]).stdout.starts_with(b"catalog:unknot  [ok]"));
}
