use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn aydisc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aydisc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(format!("{name}.schema.json"))
}

fn assert_valid(name: &str, instance: &Value) {
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(schema_path(name)).unwrap()).unwrap();
    let v = jsonschema::draft202012::new(&schema).expect("schema compiles");
    let errors: Vec<String> = v.iter_errors(instance).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

fn json_of(args: &[&str]) -> (Value, i32) {
    let o = aydisc(args);
    (serde_json::from_str(&stdout(&o)).expect("JSON on stdout"), o.status.code().unwrap())
}

#[test]
fn verify_appendix_passes_and_validates() {
    let (v, code) = json_of(&["verify-appendix", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["all_pass"], true);
    assert_valid("verification_report", &v);
}

#[test]
fn perturbed_twist_is_localized() {
    let (v, code) = json_of(&["verify-appendix", "--json", "--perturb-twist"]);
    assert_eq!(code, 1);
    let failed: Vec<&str> =
        v["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(failed, ["a1.twist_squares"]);
}

#[test]
fn arithmetic_subcommands() {
    assert_eq!(stdout(&aydisc(&["spin", "1,1,-1,-1,-1,-1,-1,-1"])).trim(), "1");
    assert_eq!(stdout(&aydisc(&["dim", "--quadratic", "1,1,-1x6"])).trim(), "6");
    assert_eq!(stdout(&aydisc(&["dim", "--quadratic", "1,1,1,1"])).trim(), "6");
    assert_eq!(stdout(&aydisc(&["dim", "--abelian", "2,2"])).trim(), "7");
    assert_eq!(stdout(&aydisc(&["minpoly-sqrt", "0+1x+0x^2"])).trim(), "-1 + X^2 + X^4 + X^6");
    let (v, _) = json_of(&["spin", "1,1,-1x6", "--json"]);
    assert_valid("stratum", &v);
    let (v, _) = json_of(&["dim", "--abelian", "2,2", "--json"]);
    assert_valid("stratum", &v);
    let (v, _) = json_of(&["minpoly-sqrt", "x", "--json"]);
    assert_eq!(v["coefficients"], serde_json::json!(["-1", "0", "1", "0", "1", "0", "1"]));
    assert_valid("minpoly_sqrt", &v);
}

#[test]
fn exit_codes() {
    assert_eq!(aydisc(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(aydisc(&["minpoly-sqrt", "1+y"]).status.code(), Some(2));
    assert_eq!(aydisc(&["direction", "decompose", "--slope", "1,0,-1", "--marking", "nope"]).status.code(), Some(2));
    assert_eq!(aydisc(&["spin", "1,a"]).status.code(), Some(2));
    assert_eq!(aydisc(&["spin", "2,2"]).status.code(), Some(3));
    // α is not a completely periodic slope within a small step bound.
    assert_eq!(aydisc(&["--max-steps", "50", "direction", "decompose", "--slope", "0,1,0"]).status.code(), Some(3));
    assert_eq!(aydisc(&["direction", "decompose", "--slope", "1,0,-1"]).status.code(), Some(0));
}

#[test]
fn decompose_json_round_trips() {
    let (v, code) = json_of(&["direction", "decompose", "--slope", "3+x^2", "--marking", "a2", "--n0", "-1", "--json"]);
    assert_eq!(code, 0);
    assert_valid("periodic_direction", &v);
    let d = aydisc::periodic::PeriodicDirectionData::from_json(&v).unwrap();
    assert_eq!(d.to_json(), v);
    assert_eq!(v["normalized_twists"][0], "3");
}

#[test]
fn affine_search_then_verify() {
    let base = ["--from-slope", "1,0,-1", "--to-slope", "3,0,1", "--from-marking", "a1", "--to-marking", "a2"];
    let mut args = vec!["affine", "search"];
    args.extend(base);
    args.extend(["--n0-range", "-2:2", "--json"]);
    let (v, code) = json_of(&args);
    assert_eq!(code, 0);
    assert_valid("affine_certificates", &v);
    let certs = v.as_array().unwrap();
    assert!(certs.iter().any(|c| c["pi1"] == serde_json::json!([6, 4, 5, 3, 1, 2]) && c["Df"][0][0] == "23+18*x+12*x^2"));
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(&good, serde_json::to_string(&v).unwrap()).unwrap();
    let mut args = vec!["affine", "verify"];
    args.extend(base);
    let good_s = good.to_str().unwrap().to_string();
    args.extend(["--certificate", &good_s]);
    assert_eq!(aydisc(&args).status.code(), Some(0));
    let mut forged = certs[0].clone();
    forged["Df"][0][1] = Value::String("-28-24*x-16*x^2".into());
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, forged.to_string()).unwrap();
    let bad_s = bad.to_str().unwrap().to_string();
    *args.last_mut().unwrap() = &bad_s;
    assert_ne!(aydisc(&args).status.code(), Some(0));
}

#[test]
fn renders_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let p = |n: &str| dir.path().join(n).to_str().unwrap().to_string();
    let (a, b, s, t) = (p("a.svg"), p("b.svg"), p("s.svg"), p("t.svg"));
    assert_eq!(aydisc(&["render", "direction", "--slope", "1-x^2", "-o", &a]).status.code(), Some(0));
    assert_eq!(aydisc(&["render", "direction", "--slope", "1-x^2", "-o", &b]).status.code(), Some(0));
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let text = String::from_utf8(ta).unwrap();
    assert_eq!(text.matches(r#"class="connection""#).count(), 6);
    assert_eq!(aydisc(&["render", "surface", "-o", &s]).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&s).unwrap().matches(r#"class="cone""#).count(), 2);
    assert_eq!(aydisc(&["render", "splitting", "-o", &t]).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&t).unwrap().matches(r#"class="connection""#).count(), 4);
}

#[test]
fn ratner_check_reports_the_t2_twist() {
    let (v, code) = json_of(&["ratner", "check", "--grid", "2", "--json"]);
    assert_valid("ratner_check", &v);
    let failed: Vec<&str> = v["report"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["adjusted.twist_T2"]);
    assert_eq!(code, 1);
    assert_eq!(v["details"]["splitting"]["tori"][0]["area"], "4*x");
}
