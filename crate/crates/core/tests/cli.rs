mod common;

use std::io::Write;
use std::process::{Output, Stdio};

use serde_json::{json, Value};
use witt_core::field::Field;
use witt_core::json::*;

use common::*;

fn run(args: &[&str]) -> (Value, i32, Output) {
    let out = wittc().args(args).env_remove("WITTC_SEED").output().unwrap();
    let doc = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (doc, out.status.code().unwrap(), out)
}

#[test]
fn exit_zero_iff_status_ok() {
    for (name, args, _) in golden_cases() {
        let (doc, code, _) = run(&args);
        assert_eq!(doc["status"] == json!("ok"), code == 0, "{name}");
        assert!(doc["provenance"]["command"].is_string(), "{name}");
    }
}

#[test]
fn emitted_values_reparse() {
    let (doc, _, out) = run(&["euler", "--f", "t^3-t", "--split", "t", "t^2-1", "--trace-oracle"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let again: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&again).unwrap() + "\n", text);

    let q = Field::Rationals;
    let p = &doc["payload"];
    let s = quad_from_json(q, &p["form"]).unwrap();
    assert_eq!(quad_to_json(&s), p["form"]);
    for key in ["first", "second"] {
        let s = quad_from_json(q, &p["split"][key]).unwrap();
        assert_eq!(quad_to_json(&s), p["split"][key]);
    }
    let inv = invariants_from_json(&p["invariants"]).unwrap();
    assert_eq!(invariants_to_json(&inv), p["invariants"]);
    let idem = poly_from_json(q, &p["split"]["idempotent"]).unwrap();
    assert_eq!(poly_to_json(&idem), p["split"]["idempotent"]);
    let datum = euler_datum_from_json(q, &doc["provenance"]["inputs"]["datum"]).unwrap();
    assert_eq!(euler_datum_to_json(&datum), doc["provenance"]["inputs"]["datum"]);

    let (doc, _, _) = run(&["transfer", "--min-poly", "t^2+1"]);
    let c = correspondence_from_json(q, &doc["payload"]["correspondence"]).unwrap();
    assert_eq!(correspondence_to_json(&c), doc["payload"]["correspondence"]);

    let (doc, _, _) = run(&["homotopy", "--f0", "t^3-t", "--f1", "t^3"]);
    let pencil = &doc["provenance"]["inputs"]["pencil"];
    let (p, samples) = pencil_from_json(q, pencil).unwrap();
    assert_eq!(&pencil_to_json(&p, &samples.unwrap()), pencil);

    let (doc, _, _) = run(&["lemma", "sqmet", "--e", "t-1", "--n", "3"]);
    let s = nilpotent_from_json(q, &doc["payload"]["space"]).unwrap();
    assert_eq!(nilpotent_to_json(&s), doc["payload"]["space"]);
}

#[test]
fn worked_examples() {
    let (doc, code, _) = run(&["euler", "--f", r#"{"coeffs":["0","-1","0","1"]}"#]);
    assert_eq!(code, 0);
    assert_eq!(doc["payload"]["form"]["gram"], json!([["-1", "0", "1"], ["0", "1", "0"], ["1", "0", "0"]]));
    let inv = &doc["payload"]["invariants"];
    assert_eq!((inv["rank"].clone(), inv["signature"].clone(), inv["disc"].clone()), (json!(3), json!(1), json!("-1")));

    let (doc, _, _) = run(&["lemma", "sqmet", "--e", "t", "--n", "4"]);
    assert_eq!(doc["payload"]["metabolic"], json!(true));
    assert_eq!(doc["payload"]["lagrangian"], json!([["0", "0", "1", "0"], ["0", "0", "0", "1"]]));

    let (doc, _, _) = run(&["homotopy", "--f0", "t^3-t", "--f1", "t^3"]);
    assert_eq!(doc["payload"]["witt_equal"], json!(true));
    assert_eq!(doc["payload"]["equals_unit_form"], json!(true));

    let (doc, _, _) = run(&["form", "diag", "[[0,1],[1,0]]"]);
    assert_eq!(doc["payload"]["entries"], json!(["2", "-1/2"]));

    let (doc, _, _) = run(&["transfer", "--min-poly", "t^2+1"]);
    assert_eq!(doc["payload"]["form"]["gram"], json!([["0", "1"], ["1", "0"]]));
    assert_eq!(doc["payload"]["invariants"]["signature"], json!(0));
}

#[test]
fn file_and_stdin_inputs() {
    let dir = std::env::temp_dir().join(format!("wittc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    std::fs::write(&a, r#"{"field":"Q","gram":[["2","0"],["0","2"]]}"#).unwrap();
    std::fs::write(&b, "[[1,0],[0,1]]").unwrap();
    let (doc, code, _) = run(&["form", "witt-equal", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!((doc["payload"]["witt_equal"].clone(), code), (json!(true), 0));
    std::fs::remove_dir_all(&dir).unwrap();

    let mut child = wittc()
        .args(["form", "invariants", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"[[1,0],[0,-1]]").unwrap();
    let out = child.wait_with_output().unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["payload"]["invariants"]["signature"], json!(0));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["frobnicate"],
        vec!["form", "invariants", "[[1,2"],
        vec!["--field", "4", "form", "invariants", "[[1]]"],
        vec!["--field", r#"{"Fp":2}"#, "form", "invariants", "[[1]]"],
        vec!["euler"],
    ] {
        let (_, code, out) = run(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let (_, _, out) = run(&["euler", "--field", r#"{"Fp":2}"#, "--f", "t^2+1"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("char k != 2"));
}

#[test]
fn env_seed_overrides_default() {
    let seeded = |s: Option<&str>| {
        let mut cmd = wittc();
        cmd.args(["selfcheck", "--iters", "1"]).env_remove("WITTC_SEED");
        if let Some(s) = s {
            cmd.env("WITTC_SEED", s);
        }
        let out = cmd.output().unwrap();
        let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
        (doc["payload"]["seed"].clone(), out.status.code().unwrap())
    };
    assert_eq!(seeded(None).0, json!(witt_core::selfcheck::DEFAULT_SEED));
    assert_eq!(seeded(Some("99")), (json!(99), 0));
    assert_eq!(seeded(Some("nope")).1, 2);
}

#[test]
fn selfcheck_table_on_stderr() {
    let (doc, code, out) = run(&["selfcheck", "--iters", "1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["payload"]["passed"], json!(true));
    let table = String::from_utf8(out.stderr).unwrap();
    for name in witt_core::selfcheck::suite_names() {
        assert!(table.contains(name), "{name}");
    }
}
