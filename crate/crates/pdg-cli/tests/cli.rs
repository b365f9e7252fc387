//! End-to-end tests of the `pdg` binary: byte-exact exports, exit
//! codes, JSON schema conformance, and determinism.

use std::process::{Command, Output};

fn pdg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = pdg(args);
    assert!(out.status.success(), "pdg {args:?} failed: {out:?}");
    String::from_utf8(out.stdout).unwrap()
}

fn schema_for(name: &str) -> jsonschema::JSONSchema {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../schemas/");
    let text = std::fs::read_to_string(format!("{path}{name}")).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&doc).unwrap()
}

fn assert_valid(schema: &jsonschema::JSONSchema, instance: &serde_json::Value) {
    if let Err(errors) = schema.validate(instance) {
        let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
        panic!("schema violations: {msgs:?}");
    }
}

#[test]
fn dot_output_is_byte_exact() {
    assert_eq!(
        stdout(&["dot", "4", "2"]),
        "digraph G_4_2 {\n0 -> 0;\n1 -> 2;\n2 -> 0;\n3 -> 2;\n}\n"
    );
    // Identity map: all self-loops.
    let text = stdout(&["dot", "5", "1"]);
    assert_eq!(
        text,
        "digraph G_5_1 {\n0 -> 0;\n1 -> 1;\n2 -> 2;\n3 -> 3;\n4 -> 4;\n}\n"
    );
    let text = stdout(&["dot", "28", "2"]);
    assert_eq!(text.lines().count(), 30);
}

#[test]
fn analyze_json_matches_schema_and_roundtrips() {
    let schema = schema_for("analysis.schema.json");
    for (n, k) in [(28u64, 2u64), (10, 2), (40, 4), (9, 1), (6, 6), (31, 3)] {
        let text = stdout(&["analyze", &n.to_string(), &k.to_string(), "--json"]);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_valid(&schema, &value);
        // Loss-free round trip through the typed report.
        let typed: pdg_core::report::AnalysisReport = serde_json::from_str(&text).unwrap();
        let again: pdg_core::report::AnalysisReport =
            serde_json::from_str(&serde_json::to_string(&typed).unwrap()).unwrap();
        assert_eq!(typed, again);
        assert_eq!(typed, pdg_core::report::analyze(n, k).unwrap());
    }
}

#[test]
fn matrix_json_matches_schema() {
    let schema = schema_for("matrix.schema.json");
    for order in ["canonical", "natural"] {
        let text = stdout(&["matrix", "28", "2", "--order", order, "--json"]);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_valid(&schema, &value);
    }
}

#[test]
fn aut_json_matches_schema() {
    let schema = schema_for("aut.schema.json");
    for (n, k) in [("28", "2"), ("12", "1"), ("12", "12")] {
        let text = stdout(&["aut", n, k, "--json"]);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_valid(&schema, &value);
    }
    let value: serde_json::Value =
        serde_json::from_str(&stdout(&["aut", "28", "2", "--json"])).unwrap();
    assert_eq!(value["total_order"], "2304");
}

#[test]
fn matrix_text_blocks() {
    let text = stdout(&["matrix", "28", "2", "--order", "canonical"]);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 28);
    // Block-diagonal: the second and third 12x12 blocks are identical.
    let block = |offset: usize| -> Vec<String> {
        (0..12)
            .map(|i| {
                rows[offset + i]
                    .split_whitespace()
                    .skip(offset)
                    .take(12)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    };
    assert_eq!(block(4), block(16));
    // Identity matrix under k = 1.
    assert_eq!(stdout(&["matrix", "3", "1"]), "1 0 0\n0 1 0\n0 0 1\n");
}

#[test]
fn polynomial_commands() {
    assert_eq!(
        stdout(&["charpoly", "28", "2"]),
        "x^21 * (x - 1) * (x^3 - 1)^2\n"
    );
    assert_eq!(stdout(&["minpoly", "28", "2"]), "x^2 * (x^3 - 1)\n");
    assert_eq!(stdout(&["minpoly", "28", "2", "--expand"]), "x^5 - x^2\n");
    assert_eq!(stdout(&["charpoly", "6", "6"]), "x^5 * (x - 1)\n");
}

#[test]
fn cert_command() {
    assert_eq!(stdout(&["cert", "10", "2"]), "10|(())|1^1,4^1\n");
    assert_eq!(stdout(&["cert", "10", "8"]), "10|(())|1^1,4^1\n");
}

#[test]
fn iso_exit_codes() {
    assert_eq!(pdg(&["iso", "10", "2", "10", "8"]).status.code(), Some(0));
    assert_eq!(pdg(&["iso", "11", "3", "11", "4"]).status.code(), Some(0));
    assert_eq!(pdg(&["iso", "28", "2", "28", "4"]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    // Unknown subcommand and missing arguments go through clap.
    assert_eq!(pdg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(pdg(&["analyze", "28"]).status.code(), Some(2));
    // Domain errors: the group order must exceed 1, exponents start at 1.
    assert_eq!(pdg(&["analyze", "1", "1"]).status.code(), Some(2));
    assert_eq!(pdg(&["dot", "10", "0"]).status.code(), Some(2));
    assert_eq!(pdg(&["verify", "--max-n", "1"]).status.code(), Some(2));
}

#[test]
fn verify_small_run_and_failure_exit() {
    let out = pdg(&[
        "verify",
        "--max-n",
        "20",
        "--max-matrix-n",
        "10",
        "--max-minpoly-n",
        "8",
        "--samples",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.trim_end().ends_with("failures: 0"), "{text}");
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["analyze", "28", "2", "--json"],
        vec!["dot", "28", "2"],
        vec!["matrix", "40", "4"],
        vec!["aut", "28", "2", "--json"],
    ] {
        let a = pdg(&args);
        let b = pdg(&args);
        assert_eq!(a.stdout, b.stdout, "args {args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
