use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_profinite-kit"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 output"),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, stdout) = run(args);
    let v = serde_json::from_str(&stdout)
        .unwrap_or_else(|e| panic!("{args:?}: not JSON ({e}):\n{stdout}"));
    (code, v)
}

fn ok(args: &[&str]) -> Value {
    let (code, v) = json(args);
    assert_eq!(code, 0, "{args:?}: {v}");
    assert_eq!(v["status"], "ok");
    assert_eq!(v["schema_version"], 1);
    v["data"].clone()
}

fn err(args: &[&str], kind: &str) -> Value {
    let (code, v) = json(args);
    assert_eq!(code, 1, "{args:?}: {v}");
    assert_eq!(v["status"], "error");
    assert_eq!(v["error"]["kind"], kind, "{v}");
    v["error"].clone()
}

#[test]
fn syntactic_of_ab_star() {
    let d = ok(&["syntactic", "--lang", "(ab)*"]);
    assert_eq!(d["order"], 6);
    assert_eq!(d["contains_empty"], true);
    assert_eq!(d["predicates"]["is_aperiodic"], true);
    assert_eq!(d["predicates"]["is_j_trivial"], false);
    let d = ok(&["syntactic", "--lang", "a(a|b)*", "--alphabet", "ab"]);
    assert_eq!(d["contains_empty"], false);
}

#[test]
fn membership() {
    let c2 = fixture("c2.json");
    assert_eq!(ok(&["member", "--table", &c2, "--pv", "G"])["member"], true);
    let d = ok(&["member", "--table", &c2, "--pv", "A"]);
    assert_eq!(d["member"], false);
    assert!(d["witness"]["assignment"].is_object());
    let b21 = fixture("b21.json");
    assert_eq!(
        ok(&["member", "--table", &b21, "--pv", "A"])["member"],
        true
    );
    assert_eq!(
        ok(&["member", "--table", &b21, "--pv", "J"])["member"],
        false
    );
    err(&["member", "--table", &c2, "--pv", "Q"], "not_found");
}

#[test]
fn table_errors() {
    let e = err(
        &[
            "member",
            "--table",
            &fixture("not_associative.json"),
            "--pv",
            "S",
        ],
        "not_associative",
    );
    assert!(e["message"].as_str().unwrap().contains("associative"));
    err(
        &["member", "--table", &fixture("truncated.json"), "--pv", "S"],
        "malformed_table",
    );
    err(
        &["member", "--table", &fixture("missing.json"), "--pv", "S"],
        "not_found",
    );
}

#[test]
fn metric() {
    let d = ok(&["metric", "--u", "a", "--v", "aa"]);
    assert_eq!(d["rank"]["value"], 2);
    assert_eq!(d["distance"]["value"], 0.25);
    let images = d["witness"]["images"].as_array().unwrap();
    assert_ne!(images[0], images[1]);
    let d = ok(&["metric", "--u", "ab", "--v", "ab"]);
    assert_eq!(d["rank"]["kind"], "infinite");
    assert_eq!(d["distance"]["value"], 0.0);
    let d = ok(&[
        "metric",
        "--u",
        "ab",
        "--v",
        "ba",
        "--pv",
        "Sl",
        "--max-order",
        "3",
    ]);
    assert_eq!(d["distance"]["kind"], "interval");
    assert_eq!(d["distance"]["upper"], 1.0 / 16.0);
    err(
        &["metric", "--u", "a", "--v", "b", "--max-order", "7"],
        "unsupported_order",
    );
}

#[test]
fn closure_and_separation() {
    let d = ok(&[
        "closure", "--lang", "(ab)*", "--word", "b'a'", "--word", "a",
    ]);
    assert_eq!(d["queries"][0]["member"], true);
    assert_eq!(d["queries"][1]["member"], false);
    let d = ok(&["separate", "--word", "ba", "--lang", "(ab)+"]);
    assert_eq!(d["separable"], true);
    assert!(d["certificate"]["group"].is_string());
    let d = ok(&[
        "separate",
        "--word",
        "a",
        "--lang",
        "a+b*",
        "--alphabet",
        "ab",
    ]);
    assert_eq!(d["separable"], false);
    assert!(d["certificate"].is_null());
    let e = err(&["closure", "--lang", "(ab", "--alphabet", "ab"], "syntax");
    assert_eq!(e["offset"], 3);
    err(
        &["separate", "--word", "c", "--lang", "a", "--alphabet", "ab"],
        "foreign_letter",
    );
}

#[test]
fn kernel_pointlike_inevitable() {
    let b21 = fixture("b21.json");
    let d = ok(&["kernel", "--table", &b21, "--check"]);
    assert_eq!(d["kernel"], serde_json::json!([0, 3, 4, 5]));
    assert_eq!(d["agrees"], true);
    let c2 = fixture("c2.json");
    assert_eq!(
        ok(&["kernel", "--table", &c2])["kernel"],
        serde_json::json!([0])
    );
    assert_eq!(
        ok(&["pointlike", "--table", &c2, "--subset", "0,1"])["pointlike"],
        false
    );
    let d = ok(&["pointlike", "--table", &b21, "--subset", "0,3"]);
    assert_eq!(d["pointlike"], true);
    assert!(d["witness"].is_string());
    assert_eq!(
        ok(&["inevitable", "--table", &b21, "--kind", "loop", "--y", "1"])["inevitable"],
        false
    );
    assert_eq!(
        ok(&["inevitable", "--table", &b21, "--kind", "loop", "--y", "3"])["inevitable"],
        true
    );
    err(&["inevitable", "--table", &b21, "--kind", "loop"], "domain");
    err(&["pointlike", "--table", &c2, "--subset", "5"], "domain");
}

#[test]
fn omega_and_enumeration() {
    let c2 = fixture("c2.json");
    let d = ok(&["omega", "--table", &c2, "--element", "1"]);
    assert_eq!(d["profiles"][0]["omega"], 0);
    assert_eq!(d["profiles"][0]["period"], 2);
    assert_eq!(
        ok(&["omega", "--table", &c2, "--term", "x^w y", "--assign", "x=1,y=1"])["value"],
        1
    );
    err(
        &[
            "omega", "--table", &c2, "--term", "x^w y", "--assign", "x=1",
        ],
        "unbound_variable",
    );
    for (order, count) in [(1, 1), (2, 5), (3, 24)] {
        let o = order.to_string();
        assert_eq!(
            ok(&["enumerate", "--order", &o, "--count-only"])["count"],
            count
        );
    }
    assert_eq!(
        ok(&["enumerate", "--order", "2", "--count-only", "--labelled"])["count"],
        8
    );
    assert_eq!(
        ok(&["enumerate", "--order", "2"])["semigroups"]
            .as_array()
            .unwrap()
            .len(),
        5
    );
    err(
        &["enumerate", "--order", "9", "--count-only"],
        "unsupported_order",
    );
}

#[test]
fn symbolic() {
    let d = ok(&["entropy", "--lang", "(a|b)*"]);
    assert!((d["entropy"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    let d = ok(&["entropy", "--lang", "(a|ba)*(b|~)", "--alphabet", "ab"]);
    let golden = ((1.0 + 5f64.sqrt()) / 2.0).log2();
    assert!((d["entropy"].as_f64().unwrap() - golden).abs() < 1e-6);
    let d = ok(&["primitive", "--subst", "a->ab; b->ba", "--blocks", "2"]);
    assert_eq!(d["primitive"], true);
    assert_eq!(d["blocks"], serde_json::json!(["aa", "ab", "ba", "bb"]));
    assert_eq!(
        ok(&["primitive", "--subst", "a->a; b->b"])["primitive"],
        false
    );
    err(
        &["primitive", "--subst", "a->ab; b->b", "--blocks", "2"],
        "domain",
    );
    err(&["primitive", "--subst", "a=ab"], "syntax");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["metric", "--u", "a"]).0, 2);
}

#[test]
fn text_format() {
    let (code, out) = run(&[
        "--format",
        "text",
        "enumerate",
        "--order",
        "3",
        "--count-only",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "24 semigroups of order 3\n");
    let (code, out) = run(&["--format", "text", "syntactic", "--lang", "(ab"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("error: "));
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Each golden file holds the exact stdout of one invocation. Table paths are
/// relative to the crate so the output does not depend on the checkout.
fn golden_cases() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        ("syntactic_ab_star", vec!["syntactic", "--lang", "(ab)*"]),
        (
            "syntactic_text",
            vec!["--format", "text", "syntactic", "--lang", "a*b"],
        ),
        (
            "member_c2_a",
            vec!["member", "--table", "tests/fixtures/c2.json", "--pv", "A"],
        ),
        (
            "member_b21_j",
            vec!["member", "--table", "tests/fixtures/b21.json", "--pv", "J"],
        ),
        ("metric_a_aa", vec!["metric", "--u", "a", "--v", "aa"]),
        (
            "metric_sl",
            vec![
                "metric",
                "--u",
                "ab",
                "--v",
                "ba",
                "--pv",
                "Sl",
                "--max-order",
                "2",
            ],
        ),
        (
            "closure_ab_star",
            vec!["closure", "--lang", "(ab)*", "--word", "b'a'"],
        ),
        (
            "separate_ba",
            vec!["separate", "--word", "ba", "--lang", "(ab)+"],
        ),
        (
            "kernel_b21",
            vec!["kernel", "--table", "tests/fixtures/b21.json", "--check"],
        ),
        (
            "pointlike_b21",
            vec![
                "pointlike",
                "--table",
                "tests/fixtures/b21.json",
                "--subset",
                "1,2",
            ],
        ),
        (
            "inevitable_loop",
            vec![
                "inevitable",
                "--table",
                "tests/fixtures/b21.json",
                "--kind",
                "loop",
                "--y",
                "4",
            ],
        ),
        (
            "omega_b21",
            vec!["omega", "--table", "tests/fixtures/b21.json"],
        ),
        ("enumerate_2", vec!["enumerate", "--order", "2"]),
        (
            "entropy_golden_mean",
            vec!["entropy", "--lang", "(a|ba)*(b|~)", "--alphabet", "ab"],
        ),
        (
            "primitive_tm",
            vec![
                "--format",
                "text",
                "primitive",
                "--subst",
                "a->ab; b->ba",
                "--blocks",
                "3",
            ],
        ),
        ("error_syntax", vec!["syntactic", "--lang", "a|*"]),
        (
            "error_table",
            vec![
                "member",
                "--table",
                "tests/fixtures/not_associative.json",
                "--pv",
                "S",
            ],
        ),
        (
            "error_truncated",
            vec![
                "member",
                "--table",
                "tests/fixtures/truncated.json",
                "--pv",
                "S",
            ],
        ),
        (
            "enumerate_3_count",
            vec!["enumerate", "--order", "3", "--count-only"],
        ),
        (
            "two_vertex_u1",
            vec![
                "inevitable",
                "--table",
                "tests/fixtures/u1.json",
                "--kind",
                "two-vertex",
                "--others",
                "0",
            ],
        ),
    ]
}

/// Checks `value` against the subset of JSON Schema used by the published
/// envelope schema: `type`, `const`, `enum`, `required`, `properties`, `items`.
fn conforms(value: &Value, schema: &Value) -> Result<(), String> {
    if let Some(c) = schema.get("const") {
        if value != c {
            return Err(format!("{value} != {c}"));
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(value) {
            return Err(format!("{value} not in {options:?}"));
        }
    }
    if let Some(t) = schema.get("type").and_then(Value::as_str) {
        let ok = match t {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "integer" => value.is_i64() || value.is_u64(),
            other => panic!("schema type {other} not handled"),
        };
        if !ok {
            return Err(format!("{value} is not of type {t}"));
        }
    }
    for key in schema
        .get("required")
        .and_then(Value::as_array)
        .into_iter()
        .flatten()
    {
        let key = key.as_str().unwrap();
        if value.get(key).is_none() {
            return Err(format!("missing {key}"));
        }
    }
    if let Some(props) = schema.get("properties").and_then(Value::as_object) {
        for (key, sub) in props {
            if let Some(v) = value.get(key) {
                conforms(v, sub).map_err(|e| format!("{key}: {e}"))?;
            }
        }
    }
    if let (Some(items), Some(values)) = (schema.get("items"), value.as_array()) {
        for v in values {
            conforms(v, items)?;
        }
    }
    Ok(())
}

#[test]
fn json_outputs_follow_the_schema() {
    let schema: Value = serde_json::from_str(
        &std::fs::read_to_string(
            Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/envelope.schema.json"),
        )
        .unwrap(),
    )
    .unwrap();
    for (name, args) in golden_cases() {
        if args[0] == "--format" {
            continue;
        }
        let text = std::fs::read_to_string(golden_dir().join(format!("{name}.out"))).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        conforms(&v, &schema).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(v["status"] == "ok", v.get("data").is_some(), "{name}");
        assert_eq!(v["status"] == "error", v.get("error").is_some(), "{name}");
    }
}

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    std::fs::create_dir_all(golden_dir()).unwrap();
    for (name, args) in golden_cases() {
        let out = Command::new(env!("CARGO_BIN_EXE_profinite-kit"))
            .current_dir(env!("CARGO_MANIFEST_DIR"))
            .args(&args)
            .output()
            .unwrap();
        let stdout = String::from_utf8(out.stdout).unwrap();
        let path = golden_dir().join(format!("{name}.out"));
        if update {
            std::fs::write(&path, &stdout).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path)
            .unwrap_or_else(|_| panic!("missing golden file {path:?}"));
        assert_eq!(stdout, expected, "golden mismatch for {name}");
        // a second run must be byte-identical
        let again = Command::new(env!("CARGO_BIN_EXE_profinite-kit"))
            .current_dir(env!("CARGO_MANIFEST_DIR"))
            .args(&args)
            .output()
            .unwrap();
        assert_eq!(String::from_utf8(again.stdout).unwrap(), stdout);
    }
}
