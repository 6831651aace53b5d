use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::Command;

fn configs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn cfg(name: &str) -> String {
    configs().join(format!("{name}.json")).display().to_string()
}

fn erskit(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_erskit")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("erskit-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

#[test]
fn classify_empty_list_is_an_empty_pass() {
    let (code, out, _) = erskit(&["classify"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["results"], Value::Array(vec![]));
    assert_eq!(v["manifest"]["command"], "classify");
}

#[test]
fn classify_rows_per_orbit_and_pair() {
    let (code, out, _) = erskit(&["classify", "--config", &cfg("d3_2"), &cfg("a2_1")]);
    assert_eq!(code, 0);
    let v = json(&out);
    // results keep manifest order
    assert_eq!(v["results"][0]["name"], "d3_2");
    assert_eq!(v["results"][1]["name"], "a2_1");
    // A_2^(1): one Π-orbit; D_3^(2): α_0 and α_2 are swapped by the diagram symmetry
    assert_eq!(v["results"][1]["data"]["rank1"].as_array().unwrap().len(), 1);
    assert!(!v["results"][0]["data"]["rank2"].as_array().unwrap().is_empty());
}

#[test]
fn verify_flags_exactly_the_mutant() {
    let mut args = vec!["verify".to_string(), "--config".into()];
    for n in ["a2_1", "d3_2", "d3_2_odd", "c2_1"] {
        args.push(cfg(n));
    }
    args.push(configs().join("mutants/kg3_d3_2.json").display().to_string());
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let (code, out, _) = erskit(&args);
    assert_eq!(code, 1);
    let v = json(&out);
    let failing: Vec<&Value> = v["results"].as_array().unwrap().iter().filter(|r| r["status"] != "pass").collect();
    assert_eq!(failing.len(), 1);
    assert_eq!(failing[0]["name"], "kg3_d3_2");
    assert_eq!(v["manifest"]["window"], serde_json::json!([4, 4]));
    assert!(v["manifest"].get("height").is_some());

    let (code, _, _) = erskit(&args[..args.len() - 1]);
    assert_eq!(code, 0);
}

#[test]
fn bad_config_exits_two_with_error_json() {
    let d = tmp("bad");
    std::fs::create_dir_all(&d).unwrap();
    let p = d.join("bad.json");
    std::fs::write(&p, r#"{"type":"Q7^(9)"}"#).unwrap();
    let (code, out, _) = erskit(&["roots", "--config", p.to_str().unwrap(), &cfg("a2_1")]);
    assert_eq!(code, 2);
    let v = json(&out);
    assert_eq!(v["results"][0]["status"], "error");
    assert_eq!(v["results"][0]["error"]["kind"], "config");
    assert_eq!(v["results"][1]["status"], "pass");

    let (code, _, _) = erskit(&["roots", "--config", "/nonexistent/x.json"]);
    assert_eq!(code, 2);
}

#[test]
fn resource_error_exits_three() {
    let (code, out, _) = erskit(&["verify-pi", "--config", &cfg("a2_1"), "--height", "1"]);
    assert_eq!(code, 3);
    assert_eq!(json(&out)["results"][0]["error"]["kind"], "resource");
}

#[test]
fn roots_are_sorted_and_csv_mirrors_json() {
    let (code, out, _) = erskit(&["roots", "--config", &cfg("d3_2"), "--window", "1,1"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let rows = v["results"][0]["data"]["roots"].as_array().unwrap();
    let coords: Vec<Vec<i64>> =
        rows.iter().map(|r| r["coords"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()).collect();
    let mut sorted = coords.clone();
    sorted.sort();
    assert_eq!(coords, sorted);
    for key in ["coords", "orbit_key", "parity", "doubled"] {
        assert!(rows[0].get(key).is_some(), "{key}");
    }

    let (_, csv, _) = erskit(&["roots", "--config", &cfg("d3_2"), "--window", "1,1", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(lines.len(), rows.len());
    for (line, c) in lines.iter().zip(&coords) {
        let joined: Vec<String> = c.iter().map(|x| x.to_string()).collect();
        assert_eq!(line.split(',').nth(1).unwrap(), joined.join(" "));
    }
}

fn export(dir: &Path, extra: &[&str]) -> i32 {
    let mut args = vec!["export", "--out", dir.to_str().unwrap()];
    args.extend_from_slice(extra);
    erskit(&args).0
}

fn read_all(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
        .filter(|(n, _)| n != "report.json")
        .collect();
    v.sort();
    v
}

#[test]
fn export_is_byte_deterministic() {
    let (a, b) = (tmp("ex-a"), tmp("ex-b"));
    let d3 = cfg("d3_2");
    let a2 = cfg("a2_1");
    assert_eq!(export(&a, &["--config", &d3, &a2]), 0);
    assert_eq!(export(&b, &["--config", &d3, &a2]), 0);
    let (fa, fb) = (read_all(&a), read_all(&b));
    assert!(fa.iter().any(|(n, _)| n == "d3_2.ears.json"));
    assert!(!fa.iter().any(|(n, _)| n == "a2_1.ears.json"));
    assert_eq!(fa, fb);
}

#[test]
fn export_tsr_relations() {
    let d = tmp("tsr");
    assert_eq!(export(&d, &["--config", &cfg("d3_2"), &cfg("b3_1"), "--preset", "tsr"]), 0);
    let count = |name: &str, tag: &str| {
        let v = json(&std::fs::read_to_string(d.join(name)).unwrap());
        v["relations"].as_array().unwrap().iter().filter(|r| r["label"].as_str().unwrap().starts_with(&format!("{tag}("))).count()
    };
    // D_3^(2) with k ≡ 1: Γ = Π ∪ {α_1*} and J(α_1∨, β)/J(β∨, α_1) = 1/2 ≠ c(α_1)
    assert_eq!(count("d3_2.relations.tsr.json", "TSR10"), 0);
    assert_eq!(count("d3_2.relations.tsr.json", "TSR11"), 8);
    assert_eq!(count("d3_2.relations.tsr.json", "TSR12"), 4);
    assert_eq!(count("b3_1.relations.tsr.json", "TSR10"), 4);
    assert!(!d.join("d3_2.roots.json").exists());
}

#[test]
fn export_needs_out() {
    let (code, out, _) = erskit(&["export", "--config", &cfg("a2_1")]);
    assert_eq!(code, 2);
    assert_eq!(json(&out)["results"][0]["error"]["kind"], "config");
}

#[test]
fn relations_latex_and_qtorus() {
    let (code, tex, _) = erskit(&["relations", "--config", &cfg("a2_1"), "--preset", "sr", "--format", "latex"]);
    assert_eq!(code, 0);
    assert!(tex.contains("% SR1") || tex.contains("SR"), "{tex}");

    let (code, out, _) = erskit(&["qtorus-verify", "--rank", "2", "--q-numeric", "-2/3"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["results"][0]["status"], "pass");

    let (code, out, _) = erskit(&["qtorus-verify", "--config", &cfg("d3_2")]);
    assert_eq!(code, 2);
    assert_eq!(json(&out)["results"][0]["error"]["kind"], "domain");
}
