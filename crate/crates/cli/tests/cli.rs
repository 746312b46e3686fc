use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke")).args(args).output().expect("binary runs")
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    let value: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&value).expect("schema compiles")
}

fn assert_valid(schema_name: &str, doc: &Value) {
    let s = schema(schema_name);
    let msgs: Vec<String> = match s.validate(doc) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{e} at {}", e.instance_path)).collect(),
    };
    panic!("{schema_name}: {msgs:?}\n{doc}");
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn stdout_lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone()).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn datum_outputs() {
    let out = hecke(&["datum", "--family", "GL", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_valid("datum.schema.json", &v);
    assert_eq!(v["weyl_order"], 2);
    let mins: Vec<Value> = v["minuscule_dominants"].as_array().unwrap().clone();
    assert!(mins.contains(&serde_json::json!([1, 0])) && mins.contains(&serde_json::json!([1, 1])));

    let out = hecke(&["datum", "--family", "GL", "--rank", "3"]);
    assert_eq!(stdout_json(&out)["weyl_order"], 6);
    for (family, n) in [("Sp", "4"), ("SL", "3"), ("PGL", "3")] {
        let out = hecke(&["datum", "--family", family, "--rank", n]);
        assert_eq!(out.status.code(), Some(0));
        assert_valid("datum.schema.json", &stdout_json(&out));
    }
}

#[test]
fn validation_errors_exit_2() {
    for args in [
        vec!["datum", "--family", "XX", "--rank", "2"],
        vec!["datum", "--family", "Sp", "--rank", "3"],
        vec!["datum", "--family", "SO", "--rank", "3"],
        vec!["poly", "--family", "GL", "--rank", "2", "--mu", "2,0"],
        vec!["poly", "--family", "GL", "--rank", "2", "--mu", "1,0,0"],
        vec!["poly", "--family", "GL", "--rank", "2", "--mu", "1,0", "--twist", "sideways"],
        vec!["verify", "ch", "--family", "GL", "--rank", "2", "--mu", "1,0", "--field", "ell=11,q=5,v=3"],
        vec!["verify", "modell", "--family", "GL", "--rank", "2", "--mu", "1,0", "--field", "rat:v=3"],
        vec!["eval", "--family", "GL", "--rank", "2", "--mu", "1,0", "--param", "0,1"],
    ] {
        let out = hecke(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err: Value = serde_json::from_slice(&out.stderr).unwrap();
        assert_valid("error.schema.json", &err);
        assert_eq!(err["error"], "validation");
        assert!(out.stdout.is_empty(), "no partial output for {args:?}");
    }
}

#[test]
fn resource_guard_exits_3() {
    let out = hecke(&["poly", "--family", "GL", "--rank", "3", "--mu", "1,0,0", "--basis", "double-coset", "--max-support", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_valid("error.schema.json", &err);
    assert_eq!(err["error"], "resource");
}

#[test]
fn poly_outputs() {
    let out = hecke(&["poly", "--family", "GL", "--rank", "2", "--mu", "1,0"]);
    let v = stdout_json(&out);
    assert_valid("poly.schema.json", &v);
    assert_eq!(v["display"], "X^2 - q*m(1,0)*X + q^2*m(1,1)");
    let c = &v["polynomial"]["coefficients"];
    assert_eq!(c[1], serde_json::json!([{"weight": [1, 0], "coeff": "-1*v^2"}, {"weight": [0, 1], "coeff": "-1*v^2"}]));
    assert_eq!(c[2], serde_json::json!([{"weight": [1, 1], "coeff": "1*v^4"}]));

    let out = hecke(&["poly", "--family", "GL", "--rank", "2", "--mu", "1,0", "--twist", "classical", "--basis", "double-coset"]);
    let v = stdout_json(&out);
    assert_valid("poly.schema.json", &v);
    assert_eq!(v["display"], "X^2 - T[1,0]*X + q*T[1,1]");

    let out = hecke(&["poly", "--family", "PGL", "--rank", "3", "--mu", "1,0", "--basis", "double-coset"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_valid("poly.schema.json", &stdout_json(&out));
}

#[test]
fn eval_output() {
    let out = hecke(&["eval", "--family", "GL", "--rank", "2", "--mu", "1,0", "--field", "ell=11,v=4", "--param", "2,7"]);
    let v = stdout_json(&out);
    assert_valid("eval.schema.json", &v);
    assert_eq!(v["coefficients"], serde_json::json!(["1", "10", "9"]));
    assert_eq!(v["frobenius"]["diagonal"], serde_json::json!(["10", "2"]));
    let out = hecke(&["eval", "--family", "GL", "--rank", "2", "--mu", "1,0", "--field", "formal", "--param", "1*v^1,-1*v^0"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_valid("eval.schema.json", &stdout_json(&out));
}

#[test]
fn verify_reports_validate() {
    let runs: Vec<Vec<&str>> = vec![
        vec!["verify", "ch", "--family", "GL", "--rank", "2", "--mu", "1,0", "--field", "ell=11,v=4", "--trials", "100", "--seed", "42"],
        vec!["verify", "ch", "--family", "GL", "--rank", "3", "--mu", "1,0,0", "--field", "formal", "--trials", "5"],
        vec!["verify", "newton", "--family", "GL", "--rank", "4", "--mu", "1,1,0,0", "--field", "rat:v=3", "--trials", "5"],
        vec!["verify", "modell", "--family", "GL", "--rank", "3", "--mu", "1,0,0", "--field", "ell=7,q=2,v=3", "--trials", "5"],
        vec!["verify", "inertia", "--d", "4", "--trials", "10"],
        vec!["verify", "satake", "--family", "GL", "--rank", "2", "--max-norm", "2"],
    ];
    for args in runs {
        let out = hecke(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let lines = stdout_lines(&out);
        assert!(!lines.is_empty());
        for l in &lines {
            assert_valid("report.schema.json", l);
            assert_eq!(l["pass"], true);
        }
        if args[1] == "ch" && args.contains(&"42") {
            assert_eq!(lines.len(), 100);
            assert!(lines.iter().enumerate().all(|(i, l)| l["trial"] == i as u64 && l["seed"] == 42));
        }
    }
}

#[test]
fn timing_flag_adds_elapsed() {
    let out = hecke(&["verify", "inertia", "--d", "2", "--trials", "2", "--timing"]);
    for l in stdout_lines(&out) {
        assert_valid("report.schema.json", &l);
        if l["check"] == "inertia" {
            assert!(l["elapsed_us"].is_u64());
        }
    }
}

#[test]
fn out_flag_and_determinism() {
    let dir = std::env::temp_dir().join(format!("hecke-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.jsonl");
    let b = dir.join("b.jsonl");
    for path in [&a, &b] {
        let out = hecke(&[
            "verify", "ch", "--family", "GL", "--rank", "3", "--mu", "1,0,0", "--field", "rat:v=3", "--trials", "20", "--seed", "9",
            "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let other = hecke(&["verify", "ch", "--family", "GL", "--rank", "3", "--mu", "1,0,0", "--field", "rat:v=3", "--trials", "20", "--seed", "10"]);
    assert_ne!(other.stdout, std::fs::read(&a).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}
