use std::process::{Command, Output};

use agcoh::tables::{reference_table, ReferenceTable, TABLE_IDS};
use serde_json::Value;

const SCHEMA: &str = include_str!("../schemas/result.schema.json");

fn agcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_agcoh"))
        .args(args)
        .env_remove("AGCOH_DATA_DIR")
        .env_remove("AGCOH_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn validate(doc: &Value) {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).unwrap();
    if let Err(errors) = compiled.validate(doc) {
        let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
        panic!("schema violations: {msgs:?}\n{doc}");
    };
}

fn ok(args: &[&str]) -> Value {
    let out = agcoh(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    validate(&doc);
    doc
}

fn failure(args: &[&str]) -> (i32, Value) {
    let out = agcoh(args);
    let code = out.status.code().unwrap();
    let doc: Value = serde_json::from_slice(&out.stderr).unwrap();
    validate(&doc);
    assert_eq!(doc["error"]["exit_code"], code);
    assert!(out.stdout.is_empty());
    (code, doc)
}

fn u64s(v: &Value) -> Vec<u64> {
    v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

#[test]
fn ih_genus_four_is_the_taut_ring() {
    let doc = ok(&["ih", "--g", "4", "--lambda", "0,0,0,0"]);
    assert_eq!(doc["command"], "ih");
    assert_eq!(
        u64s(&doc["result"]["betti"]),
        vec![1, 0, 1, 0, 1, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 1, 0, 1, 0, 1]
    );
}

#[test]
fn euler_table_lists_nine_values() {
    let doc = ok(&["tables", "--id", "euler_ag"]);
    assert_eq!(doc["result"]["values"].as_array().unwrap().len(), 9);
}

#[test]
fn odd_weight_gives_zero_with_warning() {
    let doc = ok(&["ih", "--g", "2", "--lambda", "2,1"]);
    assert!(u64s(&doc["result"]["betti"]).iter().all(|&b| b == 0));
    let warnings = doc["warnings"].as_array().unwrap();
    assert!(warnings.iter().any(|w| w.as_str().unwrap().contains("odd weight")));
}

#[test]
fn exit_codes() {
    assert_eq!(failure(&["ih", "--g", "2", "--lambda", "1,2"]).0, 2);
    assert_eq!(failure(&["ih", "--g", "3", "--lambda", "1,0"]).0, 2);
    assert_eq!(failure(&["taut", "--g", "0"]).0, 2);
    assert_eq!(failure(&["taut"]).0, 2);
    assert_eq!(failure(&["frobnicate"]).0, 2);
    assert_eq!(failure(&["tables", "--id", "nope"]).0, 2);
    assert_eq!(failure(&["euler", "--g", "1"]).0, 3);
    assert_eq!(failure(&["euler", "--g", "1", "--masses", "/nonexistent/masses.tsv"]).0, 3);
    assert_eq!(failure(&["ih", "--g", "2", "--signs", "/nonexistent/signs.json"]).0, 3);
    let (code, doc) = failure(&["arthur", "--g", "12"]);
    assert_eq!(code, 4);
    assert_eq!(doc["error"]["kind"], "registry_incomplete");
}

#[test]
fn data_dir_supplies_masses() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/data");
    let out = Command::new(env!("CARGO_BIN_EXE_agcoh"))
        .args(["euler", "--g", "1"])
        .env("AGCOH_DATA_DIR", dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["result"]["elliptic_term"], "1");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["ih", "--g", "6", "--hodge"][..],
        &["arthur", "--g", "10"],
        &["intersect", "--g", "4"],
        &["taut", "--g", "5", "--pairing"],
        &["tables"],
    ] {
        let a = agcoh(args);
        let b = agcoh(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn every_command_validates() {
    for args in [
        &["taut", "--g", "3", "--pairing"][..],
        &["intersect", "--g", "3"],
        &["modforms", "--g", "2"],
        &["torsion", "--g", "2", "--mod-negation"],
        &["arthur", "--g", "7"],
        &["ih", "--g", "6", "--signs", "both"],
        &["tables"],
        &["stable", "--space", "sat", "--max-degree", "12"],
    ] {
        let doc = ok(args);
        assert_eq!(doc["command"], args[0]);
        let text = serde_json::to_string_pretty(&doc).unwrap() + "\n";
        assert_eq!(text.as_bytes(), agcoh(args).stdout, "re-serialization differs for {args:?}");
    }
}

#[test]
fn reference_tables_round_trip() {
    for id in TABLE_IDS {
        let doc = ok(&["tables", "--id", id]);
        let parsed: ReferenceTable = serde_json::from_value(doc["result"].clone()).unwrap();
        assert_eq!(parsed, reference_table(id).unwrap(), "{id}");
    }
}

#[test]
fn tsv_and_latex_projections() {
    let out = agcoh(&["taut", "--g", "2", "--format", "tsv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "degree\tdimension\n0\t1\n2\t1\n4\t1\n6\t1\n");
    let out = agcoh(&["ih", "--g", "2", "--lambda", "2,1", "--format", "tsv"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("# warning: odd weight"));
    let out = agcoh(&["torsion", "--g", "1", "--format", "latex"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("\\begin{tabular}{l}\nclass \\\\\n"));
    assert!(text.ends_with("\\end{tabular}\n"));
}
