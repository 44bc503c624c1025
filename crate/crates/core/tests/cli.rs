use std::process::Command;

use autbound::cli::render_json;
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn autbound(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_autbound"))
        .args(args)
        .env_remove("AUTBOUND_REGISTRY")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(args: &[&str]) -> (i32, Value, String) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let r = autbound(&full);
    let v: Value = serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", r.stdout));
    (r.code, v, r.stdout)
}

#[test]
fn bound_example() {
    let r = autbound(&["bound", "--class", "supersolvable", "--odd", "--genus", "3"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("bound: 21\n"), "{}", r.stdout);
    let (_, v, _) = json(&["bound", "--class", "supersolvable", "--odd", "--genus", "3"]);
    assert_eq!(v["value"], "21");
    assert_eq!(v["rule"]["id"], "odd-supersolvable");
    assert!(v["rule"]["anchor"].as_str().unwrap().contains("odd"));
}

#[test]
fn derived_chain_example() {
    let (code, v, _) = json(&["signatures", "derived-chain", "(0;2,4,7)", "--depth", "3"]);
    assert_eq!(code, 0);
    let steps = v["steps"].as_array().unwrap();
    let quotients: Vec<&str> = steps.iter().map(|s| s["quotient"].as_str().unwrap()).collect();
    assert_eq!(quotients, ["C2", "C7", "C2 x C2 x C2 x C2 x C2 x C2"]);
    assert_eq!(steps.last().unwrap()["signature"], "(49;-)");
}

#[test]
fn classify_example() {
    let (code, v, _) = json(&["group", "classify", "Alt 4"]);
    assert_eq!(code, 0);
    assert_eq!(v["clt"], "false");
    assert_eq!(v["clt_missing"], serde_json::json!([6]));
    assert_eq!(v["classes"]["supersolvable"], "false");
    assert_eq!(v["classes"]["solvable"], "true");
}

#[test]
fn table_file_input() {
    let dir = std::env::temp_dir().join(format!("autbound-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c3.txt");
    std::fs::write(&path, "order 3\n0 1 2\n1 2 0\n2 0 1\n").unwrap();
    let (code, v, _) = json(&["group", "classify", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["cyclic"], true);
    let r = autbound(&["group", "classify", "--file", dir.join("missing").to_str().unwrap()]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("Io"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_status_convention() {
    // computed, but nothing to report
    assert_eq!(autbound(&["bound", "--class", "exponent", "--genus", "5"]).code, 2);
    assert_eq!(
        autbound(&["witness", "--class", "metacyclic", "--odd", "--genus", "4"]).code,
        2
    );
    assert_eq!(
        autbound(&["group", "action", "C 4", "--signature", "(0;2,2,2)"]).code,
        2
    );
    // operational failures
    let r = autbound(&["bound", "--class", "cyclic", "--genus", "1"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("GenusTooSmall"));
    let r = autbound(&["signatures", "abelianize", "(0;2,x)"]);
    assert_eq!(r.code, 1);
    let r = autbound(&["bound", "--class", "cyclic"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("Usage"), "{}", r.stderr);
    let r = autbound(&[
        "bound",
        "--class",
        "cyclic",
        "--genus",
        "3",
        "--registry",
        "/nonexistent/registry.toml",
    ]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("Registry"), "{}", r.stderr);
    assert_eq!(autbound(&["--version"]).code, 0);
}

fn no_floats(v: &Value) -> bool {
    match v {
        Value::Number(n) => !n.is_f64(),
        Value::Array(a) => a.iter().all(no_floats),
        Value::Object(m) => m.values().all(no_floats),
        _ => true,
    }
}

#[test]
fn json_round_trips_byte_identically() {
    let cases: &[&[&str]] = &[
        &["bound", "--class", "metacyclic", "--odd", "--genus", "3"],
        &["bound", "--class", "general", "--pq", "2,7", "--genus", "49"],
        &["bound", "--class", "cyclic", "--min-prime", "5", "--genus", "12"],
        &["bound", "--class", "nilpotent", "--p-group", "3", "--genus", "10"],
        &["bound", "--class", "clt", "--not-div-8", "--genus", "10"],
        &["attainable", "--class", "metacyclic", "--odd", "--genus", "7"],
        &["witness", "--class", "cyclic", "--odd", "--genus", "6", "--verify"],
        &["signatures", "enumerate", "--threshold", "8/33", "--odd-periods"],
        &["signatures", "abelianize", "(2;3,3)"],
        &["signatures", "derived-chain", "(0;2,3,10)", "--depth", "2"],
        &["group", "classify", "GL2 3"],
        &["group", "action", "C 7 : C 3 @ 2", "--signature", "(0;3,3,7)"],
        &["group", "action", "C 5 x C 5", "--threshold", "1/5"],
        &["bound", "--class", "nope", "--genus", "3"],
    ];
    for args in cases {
        let (_, v, raw) = json(args);
        assert_eq!(render_json(&v), raw, "{args:?}");
        assert!(no_floats(&v), "{args:?}");
    }
}

#[test]
fn numbers_are_exact() {
    let (_, v, _) = json(&["signatures", "enumerate", "--threshold", "8/33", "--odd-periods"]);
    let coefs: Vec<&str> = v["signatures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["coefficient"].as_str().unwrap())
        .collect();
    assert_eq!(coefs, ["15", "21/2", "9", "33/4"]);
    let (_, v, _) = json(&["bound", "--class", "supersolvable", "--odd", "--genus", "4"]);
    assert_eq!(v["value"], "63/2");
}

#[test]
fn tables_verify_reports_match() {
    let (code, v, _) = json(&["tables", "verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["all_match"], true);
    let r = autbound(&["tables", "verify"]);
    assert!(r.stdout.contains("large-order: 13/13 rows match"));
    assert!(r.stdout.contains("odd-order: 4/4 rows match"));
}

#[test]
fn witness_verification() {
    let r = autbound(&["witness", "--class", "abelian", "--odd", "--genus", "7", "--verify"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("group: C 3 x C 9"));
    assert!(r.stdout.contains("verified genus: 7"));
}

#[test]
fn regenerated_tables_match_fixtures() {
    use autbound::bounds::tables::{parse_fixture, TABLE_LARGE, TABLE_ODD};
    for (name, fixture) in [("large", TABLE_LARGE), ("odd", TABLE_ODD)] {
        let r = autbound(&["tables", "regenerate", name]);
        assert_eq!(r.code, 0);
        assert_eq!(
            parse_fixture(&r.stdout).unwrap(),
            parse_fixture(fixture).unwrap(),
            "{name}"
        );
    }
    assert_eq!(autbound(&["tables", "regenerate", "huge"]).code, 1);
}
