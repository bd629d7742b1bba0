use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn coxperp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxperp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_out(args: &[&str]) -> Value {
    let out = coxperp(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn decide_diamond() {
    let v = json_out(&["decide", "-x", "y1", &data("diamond.cox"), "--json"]);
    assert_eq!(v["decision"], "finite");
    assert_eq!(v["case"], "1c");
    assert_eq!(v["branch"], "with-cycle");
    assert_eq!(v["K"].as_array().unwrap().len(), 4);
}

#[test]
fn decide_g4_reports_condition_four() {
    let v = json_out(&["decide", "-x", "a", &data("g4.cox"), "--json", "--witnesses", "5"]);
    assert_eq!(v["decision"], "infinite");
    assert_eq!(v["violation"]["condition"], 4);
    assert_eq!(v["violation"]["vertex"], "d");
    assert_eq!(v["O2"]["d"], serde_json::json!(["a"]));
    assert_eq!(v["witnesses"]["generators"].as_array().unwrap().len(), 5);

    let out = coxperp(&["decide", "-x", "a", &data("g4.cox")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("not finitely generated"));
    assert!(text.contains("condition 4"));
}

#[test]
fn oracle_a3_has_alpha_3() {
    let v = json_out(&["oracle", "-x", "1", &data("a3.cox"), "--depth", "8", "--json"]);
    assert_eq!(v["count"], 1);
    assert_eq!(v["complete"], true);
    let root: Vec<f64> = serde_json::from_value(v["roots"][0].clone()).unwrap();
    assert!((root[0]).abs() < 1e-9 && root[1].abs() < 1e-9 && (root[2] - 1.0).abs() < 1e-9);
}

#[test]
fn oracle_compare_agrees() {
    for (file, x) in [
        ("a3.cox", "1"),
        ("b2.cox", "s"),
        ("diamond.cox", "y1"),
        ("affine_a4.cox", "y0"),
    ] {
        let v = json_out(&["oracle", "-x", x, &data(file), "--compare", "--json"]);
        assert_eq!(v["compare"]["agree"], true, "{file}");
    }
}

#[test]
fn generators_and_presentation() {
    let v = json_out(&["generators", "-x", "s", &data("b2.cox"), "--json"]);
    assert_eq!(v["saturated"], true);
    assert_eq!(v["generators"][0]["word"], serde_json::json!(["t", "s", "t"]));

    let v = json_out(&["presentation", "-x", "y0", &data("affine_a4.cox"), "--json"]);
    assert_eq!(v["matrix"], v["numeric"]);
    let n = v["generators"].as_array().unwrap().len();
    assert_eq!(v["matrix"].as_array().unwrap().len(), n);
}

#[test]
fn presentation_of_infinite_case_is_not_saturated() {
    let out = coxperp(&[
        "presentation",
        "-x",
        "a",
        &data("g4.cox"),
        "--json",
        "--max-path-len",
        "8",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let e: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(e["error"]["kind"], "not_saturated");
}

#[test]
fn moves_from_pair() {
    let v = json_out(&["moves", "-x", "y0", &data("affine_a4.cox"), "--from", "y0,y2", "--json"]);
    assert_eq!(v["closed_sequence"]["winding"].as_i64().unwrap().abs(), 3);
    assert!(v["reachable"].as_array().unwrap().len() > 1);

    let out = coxperp(&["moves", "-x", "y0", &data("affine_a4.cox"), "--from", "y0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn graphs() {
    let out = coxperp(&["odd-graph", &data("g4.cox"), "--dot"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("graph coxeter {"));
    assert!(dot.contains("fillcolor"));
    assert!(!dot.contains("inf"));
    let out = coxperp(&["odd-graph", &data("g4.cox"), "--dot", "--full"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("label=\"inf\""));

    let v = json_out(&["cycle-core", &data("g4.cox"), "-x", "a", "--json"]);
    assert_eq!(v["K"], serde_json::json!(["a", "b", "c"]));
}

#[test]
fn json_is_byte_stable() {
    for args in [
        vec!["decide", "-x", "a", "g4.cox", "--json", "--witnesses", "3"],
        vec!["generators", "-x", "y0", "affine_a4.cox", "--json"],
        vec!["oracle", "-x", "y1", "diamond.cox", "--json"],
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| if a.ends_with(".cox") { data(a) } else { a.to_string() })
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(coxperp(&args).stdout, coxperp(&args).stdout);
    }
}

#[test]
fn input_errors_exit_one() {
    let dir = std::env::temp_dir().join(format!("coxperp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.cox");
    std::fs::write(&bad, "gens a b\nm a b 1\n").unwrap();
    let out = coxperp(&["decide", "-x", "a", bad.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let e: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(e["error"]["kind"], "parse");
    assert!(e["error"]["message"].as_str().unwrap().contains("line 2"));

    let out = coxperp(&["decide", "-x", "q", &data("a3.cox")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let out = coxperp(&["decide", &data("a3.cox")]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn selftest_passes() {
    let out = coxperp(&["selftest"]);
    assert!(out.status.success());
    assert!(!String::from_utf8(out.stdout).unwrap().contains("FAIL"));
}
