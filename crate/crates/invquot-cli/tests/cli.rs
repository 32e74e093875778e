//! End-to-end checks of the binary: golden output, exit codes, determinism,
//! and schema conformance of every JSON shape.

mod schema;

use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_invquot"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn exit_code(args: &[&str]) -> i32 {
    run(args).status.code().expect("no signal")
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
}

#[test]
fn classify_k7_matches_golden() {
    assert_eq!(
        stdout_of(&["classify", "--k2", "7"]),
        golden("classify_k7.txt")
    );
}

#[test]
fn classify_k7_paper_matches_golden() {
    assert_eq!(
        stdout_of(&["classify", "--k2", "7", "--format", "paper"]),
        golden("classify_k7_paper.txt")
    );
}

#[test]
fn enriques_k7_matches_golden() {
    assert_eq!(
        stdout_of(&["enriques", "--k2", "7"]),
        golden("enriques_k7.txt")
    );
}

#[test]
fn examples_match_golden() {
    assert_eq!(stdout_of(&["examples"]), golden("examples.txt"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["classify", "--k2", "7", "--format", "json"],
        vec!["classify", "--k2", "7", "--trace"],
        vec!["enriques", "--k2", "7", "--format", "json"],
        vec!["examples", "--format", "json"],
        vec!["rules", "--format", "json"],
    ] {
        assert_eq!(
            stdout_of(&args),
            stdout_of(&args),
            "nondeterministic: {args:?}"
        );
    }
}

#[test]
fn exit_codes() {
    assert_eq!(exit_code(&["classify", "--k2", "7"]), 0);
    // out-of-range and incompatible flag values are usage errors
    assert_eq!(exit_code(&["classify", "--k2", "0"]), 2);
    assert_eq!(exit_code(&["classify", "--k2", "10"]), 2);
    assert_eq!(exit_code(&["classify", "--k2", "7", "--k", "6"]), 2);
    assert_eq!(exit_code(&["classify", "--k2", "7", "--kw2", "5"]), 2);
    assert_eq!(exit_code(&["rules", "--rule", "NO-SUCH-RULE"]), 2);
    assert_eq!(
        exit_code(&["classify", "--k2", "7", "--rules-file", "/no/such/file"]),
        2
    );
    // clap rejects unknown flags and subcommands with its own usage exit
    assert_eq!(exit_code(&["classify", "--bogus"]), 2);
    assert_eq!(exit_code(&["frobnicate"]), 2);
}

#[test]
fn error_messages_name_the_problem() {
    let out = run(&["classify", "--k2", "7", "--kw2", "5"]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("K_W^2 = 5"), "stderr was: {err}");
    assert!(err.contains("admissible"), "stderr was: {err}");
}

#[test]
fn numeric_only_mode_for_other_k2() {
    let text = stdout_of(&["classify", "--k2", "3"]);
    assert!(text.contains("mode: numeric bounds only"));
    assert!(text.contains("geometric exclusions applied: 0"));
    // the k = 5 cells
    assert!(text.contains("K_W^2 = 0 (kappa(W) <= 2)"));
    assert!(text.contains("(1,-2)+(0,-4)"));
    assert!(text.contains("(0,-6)"));
    // k = 7 is the bicanonical count for K_S^2 = 3
    assert!(text.contains("bicanonical map composed with the involution"));
}

#[test]
fn enriques_elsewhere_is_unknown() {
    let text = stdout_of(&["enriques", "--k2", "5"]);
    assert!(text.contains("unknown (numeric-only mode"));
    assert!(text.contains("no candidate analysis available"));
}

#[test]
fn trace_shows_enumeration_rejections() {
    let plain = stdout_of(&["classify", "--k2", "7", "--k", "9"]);
    let traced = stdout_of(&["classify", "--k2", "7", "--k", "9", "--trace"]);
    assert!(!plain.contains("rejected during enumeration"));
    assert!(traced.contains("rejected during enumeration:"));
    assert!(traced.contains("(0,-14): K_W.B0 = 6 = 12 + 2l forces l = -3"));
    assert!(traced.contains("constraints: K_W^2 >= K_S^2 - k"));
}

#[test]
fn kw2_filter_selects_single_cell() {
    let text = stdout_of(&["classify", "--k2", "7", "--kw2", "0"]);
    assert!(text.contains("K_W^2 = 0"));
    assert!(!text.contains("k = 9"));
    assert!(text.contains("(2,0)+(1,-2)"));
}

#[test]
fn rules_file_adds_an_exclusion() {
    let dir = std::env::temp_dir();
    let path: PathBuf = dir.join(format!("invquot-extra-rules-{}.rules", std::process::id()));
    std::fs::write(
        &path,
        "rule EXTRA-DEMO\n\
         provenance geometric\n\
         scope ks2=7 k=9 kw2=-2\n\
         pattern (3,-2)\n\
         citation demonstration source\n\
         end\n",
    )
    .unwrap();
    let path_str = path.to_str().unwrap();

    let text = stdout_of(&["classify", "--k2", "7", "--rules-file", path_str]);
    assert!(text.contains("(3,-2)  [excluded by EXTRA-DEMO]"));
    assert!(text.contains("admitted 9 of 11 generated"));
    assert!(text.contains("geometric exclusions applied: 3"));

    let listing = stdout_of(&["rules", "--rules-file", path_str, "--rule", "EXTRA-DEMO"]);
    assert!(listing.contains("EXTRA-DEMO (geometric, classification; K_S^2=7, k=9, K_W^2=-2)"));

    std::fs::remove_file(&path).ok();
}

#[test]
fn malformed_rules_file_is_a_usage_error() {
    let dir = std::env::temp_dir();
    let path: PathBuf = dir.join(format!("invquot-bad-rules-{}.rules", std::process::id()));
    std::fs::write(&path, "rule BROKEN\npattern (1,1)\nend\n").unwrap();
    let code = exit_code(&[
        "classify",
        "--k2",
        "7",
        "--rules-file",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    std::fs::remove_file(&path).ok();
}

#[test]
fn json_outputs_conform_to_the_schema() {
    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/output-schema.json");
    let schema_text = std::fs::read_to_string(&schema_path)
        .unwrap_or_else(|e| panic!("read {}: {e}", schema_path.display()));
    let root: Value = serde_json::from_str(&schema_text).unwrap();

    for args in [
        vec!["classify", "--k2", "7", "--format", "json"],
        vec!["classify", "--k2", "3", "--format", "json"],
        vec!["classify", "--k2", "9", "--format", "json"],
        vec!["classify", "--k2", "7", "--k", "9", "--format", "json"],
        vec!["enriques", "--k2", "7", "--format", "json"],
        vec!["enriques", "--k2", "2", "--format", "json"],
        vec!["examples", "--format", "json"],
        vec!["rules", "--format", "json"],
        vec!["rules", "--provenance", "geometric", "--format", "json"],
    ] {
        let instance: Value = serde_json::from_str(&stdout_of(&args)).unwrap();
        schema::validate(&root, &root, &instance, "$").unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
}

#[test]
fn schema_checker_rejects_wrong_shapes() {
    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/output-schema.json");
    let root: Value = serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    // not one of the four report shapes
    let bad: Value = serde_json::json!({"report": "classification", "schema_version": 1});
    assert!(schema::validate(&root, &root, &bad, "$").is_err());
    // tampered field type deep inside a valid document
    let mut doc: Value =
        serde_json::from_str(&stdout_of(&["examples", "--format", "json"])).unwrap();
    doc["rows"][0]["k"] = Value::String("11".to_string());
    assert!(schema::validate(&root, &root, &doc, "$").is_err());
}

#[test]
fn classification_json_round_trips_the_tables() {
    let doc: Value =
        serde_json::from_str(&stdout_of(&["classify", "--k2", "7", "--format", "json"])).unwrap();
    assert_eq!(doc["report"], "classification");
    assert_eq!(doc["ks2"], 7);
    assert_eq!(doc["geometric_exclusions"], 2);
    let sections = doc["sections"].as_array().unwrap();
    assert_eq!(sections.len(), 4);
    let k9 = &sections[2];
    assert_eq!(k9["profile"]["k"], 9);
    let outcomes = k9["cells"][0]["outcomes"].as_array().unwrap();
    assert_eq!(outcomes.len(), 11);
    let admitted = outcomes
        .iter()
        .filter(|o| o["status"] == "admitted")
        .count();
    assert_eq!(admitted, 10);
    assert_eq!(outcomes[0]["rule_id"], "MQS-2.1.1");
}
