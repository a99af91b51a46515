//! End-to-end tests of the `aoc` binary: flags, scenario files, report
//! shapes, and the exit-code contract.

use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aoc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aoc"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&output.stdout)
        )
    })
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn scenario_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("aoc-cli-it-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join(name);
    std::fs::write(&path, contents).expect("write scenario");
    path
}

fn path_arg(path: &PathBuf) -> &str {
    path.to_str().expect("utf-8 temp path")
}

#[test]
fn surgery_turns_the_example_slope() {
    let output = run(&["surgery", "--mult", "1", "--link", "-1", "--k", "3"]);
    assert_eq!(code(&output), 0);
    let report = stdout_json(&output);
    assert_eq!(report["mult"], 4);
    assert_eq!(report["link"], -1);
    assert_eq!(report["schema"], "aoc/1");
    assert!(!output.stderr.is_empty(), "human summary goes to stderr");
}

#[test]
fn strip_classify_names_the_positive_model() {
    let output = run(&["strip", "classify", "--model", "positive"]);
    assert_eq!(code(&output), 0);
    assert_eq!(stdout_json(&output)["nature"], "positively-twisted");
}

#[test]
fn strip_complete_emits_a_witness_for_mixed_signs() {
    let path = scenario_file(
        "complete.json",
        r#"{
            "schema": "aoc/1",
            "model": "positive",
            "point": {"x": "0", "y": "0"},
            "signs": {"stable": "+", "unstable": "-"}
        }"#,
    );
    let output = run(&["strip", "complete", "-f", path_arg(&path)]);
    assert_eq!(code(&output), 0, "incomplete is an answer, not a failure");
    let report = stdout_json(&output);
    assert_eq!(report["complete"], false);
    assert!(report["witness"]["y"]["x"].is_string());
    assert!(report["witness"]["z"]["y"].is_string());

    let path = scenario_file(
        "complete2.json",
        r#"{
            "schema": "aoc/1",
            "model": "positive",
            "point": {"x": "0", "y": "0"},
            "signs": {"stable": "+", "unstable": "+"}
        }"#,
    );
    let output = run(&["strip", "complete", "-f", path_arg(&path)]);
    assert_eq!(code(&output), 0);
    let report = stdout_json(&output);
    assert_eq!(report["complete"], true);
    assert!(report.get("witness").is_none());
}

#[test]
fn strip_lozenge_finds_the_unit_lozenge() {
    let path = scenario_file(
        "lozenge.json",
        r#"{
            "schema": "aoc/1",
            "model": "positive",
            "point": {"x": "0", "y": "0"},
            "signs": {"stable": "+", "unstable": "+"}
        }"#,
    );
    let output = run(&["strip", "lozenge", "-f", path_arg(&path)]);
    assert_eq!(code(&output), 0);
    let report = stdout_json(&output);
    assert_eq!(report["lozenge"]["lozenge_type"], "plus-plus");
    assert_eq!(report["lozenge"]["corner2"]["x"], "1");

    let path = scenario_file(
        "lozenge-trivial.json",
        r#"{
            "schema": "aoc/1",
            "model": "trivial",
            "point": {"x": "0", "y": "0"},
            "signs": {"stable": "+", "unstable": "+"}
        }"#,
    );
    let output = run(&["strip", "lozenge", "-f", path_arg(&path)]);
    assert_eq!(code(&output), 0);
    assert!(stdout_json(&output)["lozenge"].is_null());
}

#[test]
fn strip_rejects_points_outside_the_model() {
    let path = scenario_file(
        "outside.json",
        r#"{
            "schema": "aoc/1",
            "model": "positive",
            "point": {"x": "5", "y": "0"},
            "signs": {"stable": "+", "unstable": "+"}
        }"#,
    );
    let output = run(&["strip", "complete", "-f", path_arg(&path)]);
    assert_eq!(code(&output), 1);
    assert!(stdout_json(&output)["violation"]["message"]
        .as_str()
        .unwrap()
        .contains("outside"));
}

#[test]
fn drift_eval_counts_windings_with_weights() {
    let path = scenario_file(
        "drift.json",
        r#"{
            "schema": "aoc/1",
            "punctures": [
                {"x": "0", "y": "0", "local_drift": 1},
                {"x": "2", "y": "0", "local_drift": -3}
            ],
            "curve": [
                {"x": "-1", "y": "-1"},
                {"x": "3", "y": "-1"},
                {"x": "3", "y": "1"},
                {"x": "-1", "y": "1"}
            ]
        }"#,
    );
    let output = run(&["drift", "eval", "-f", path_arg(&path)]);
    assert_eq!(code(&output), 0);
    assert_eq!(stdout_json(&output)["drift"], -2);
}

#[test]
fn drift_check_local_accepts_and_reports_both_sums() {
    let path = scenario_file(
        "check.json",
        r#"{
            "schema": "aoc/1",
            "punctures": [{"x": "1/3", "y": "1/3", "local_drift": -1}],
            "curve": [
                {"x": "-1", "y": "-1"},
                {"x": "2", "y": "-1"},
                {"x": "2", "y": "2"},
                {"x": "-1", "y": "2"}
            ]
        }"#,
    );
    let output = run(&["drift", "check-local", "-f", path_arg(&path)]);
    assert_eq!(code(&output), 0);
    let report = stdout_json(&output);
    assert_eq!(report["accepted"], true);
    assert_eq!(report["curve_drift"], -1);
    assert_eq!(report["enclosed_sum"], -1);
}

#[test]
fn drift_check_local_random_is_seeded() {
    let output = run_with_env(&["drift", "check-local", "--random", "25"], "AOC_SEED", "7");
    assert_eq!(code(&output), 0);
    let report = stdout_json(&output);
    assert_eq!(report["checked"], 25);
    assert_eq!(report["accepted"], true);
    assert_eq!(report["seed"], "7");
}

#[test]
fn drift_witness_returns_a_positive_mult_puncture() {
    let path = scenario_file(
        "witness.json",
        r#"{
            "schema": "aoc/1",
            "punctures": [
                {"x": "1/3", "y": "1/3", "local_drift": -2,
                 "invariant": {"mult": 3, "link": -1, "period": 1}}
            ],
            "curve": [
                {"x": "-1", "y": "-1"},
                {"x": "2", "y": "-1"},
                {"x": "2", "y": "2"},
                {"x": "-1", "y": "2"}
            ]
        }"#,
    );
    let output = run(&["drift", "witness", "-f", path_arg(&path)]);
    assert_eq!(code(&output), 0);
    let report = stdout_json(&output);
    assert_eq!(report["witness"]["invariant"]["mult"], 3);
    assert_eq!(report["witness"]["local_drift"], -2);
}

#[test]
fn drift_rectangle_follows_the_deck_counts() {
    let output = run(&["drift", "rectangle", "--n1", "2", "--n2", "3"]);
    assert_eq!(code(&output), 0);
    assert_eq!(stdout_json(&output)["boundary_drift"], -5);

    let output = run(&["drift", "rectangle", "--n1", "0", "--n2", "3"]);
    assert_eq!(code(&output), 1);
    assert!(stdout_json(&output)["violation"].is_object());
}

#[test]
fn holonomy_exponent_obeys_the_side_rule() {
    let output = run(&[
        "holonomy", "exponent", "--mult", "2", "--period", "1", "--side", "right",
    ]);
    assert_eq!(code(&output), 0);
    assert_eq!(stdout_json(&output)["exponent"], -2);
}

#[test]
fn holonomy_compose_defined_and_blow_up() {
    let path = scenario_file(
        "compose.json",
        r#"{
            "schema": "aoc/1",
            "singularities": {"s": {"mult": 2, "link": -1, "period": 1}},
            "events": [
                {"singularity": "s", "side": "right", "split": "1/2", "u_position": "0"}
            ]
        }"#,
    );
    let output = run(&["holonomy", "compose", "-f", path_arg(&path)]);
    assert_eq!(code(&output), 0);
    let report = stdout_json(&output);
    assert_eq!(report["outcome"], "defined");
    assert_eq!(report["length"].as_array().unwrap().len(), 2);

    let path = scenario_file(
        "blowup.json",
        r#"{
            "schema": "aoc/1",
            "singularities": {"n": {"mult": -2, "link": -1, "period": 1}},
            "periodic_tail": [
                {"singularity": "n", "side": "right", "split": "1", "u_position": "0"}
            ]
        }"#,
    );
    let output = run(&["holonomy", "compose", "-f", path_arg(&path)]);
    assert_eq!(code(&output), 1, "blow-up is a reject verdict");
    let report = stdout_json(&output);
    assert_eq!(report["outcome"], "blow-up");
    assert_eq!(report["per_period_max_exponent"], 2);
}

#[test]
fn holonomy_contract_certifies_or_rejects() {
    let path = scenario_file(
        "contract.json",
        r#"{
            "schema": "aoc/1",
            "singularities": {"p": {"mult": 1, "link": -1, "period": 1}},
            "events": [
                {"singularity": "p", "side": "right", "split": "1", "u_position": "0"},
                {"singularity": "p", "side": "right", "split": "1/2", "u_position": "1"}
            ]
        }"#,
    );
    let output = run(&["holonomy", "contract", "-f", path_arg(&path)]);
    assert_eq!(code(&output), 0);
    let report = stdout_json(&output);
    assert_eq!(report["holds"], true);
    assert_eq!(report["exponents"].as_array().unwrap().len(), 2);

    let path = scenario_file(
        "contract-bad.json",
        r#"{
            "schema": "aoc/1",
            "singularities": {"n": {"mult": -1, "link": -1, "period": 1}},
            "events": [
                {"singularity": "n", "side": "right", "split": "1", "u_position": "0"}
            ]
        }"#,
    );
    let output = run(&["holonomy", "contract", "-f", path_arg(&path)]);
    assert_eq!(code(&output), 1);
    assert!(stdout_json(&output)["violation"]["message"]
        .as_str()
        .unwrap()
        .contains("0"));
}

#[test]
fn holonomy_contract_random_is_seeded() {
    let output = run_with_env(
        &["holonomy", "contract", "--random", "25"],
        "AOC_SEED",
        "11",
    );
    assert_eq!(code(&output), 0);
    let report = stdout_json(&output);
    assert_eq!(report["accepted"], true);
    assert_eq!(report["seed"], "11");
}

#[test]
fn sections_validate_reports_signs() {
    let path = scenario_file(
        "validate.json",
        r#"{
            "schema": "aoc/1",
            "sections": [
                {"name": "B", "kind": "birkhoff", "boundary": [
                    {"orbit": "a", "mult": 2, "link": -1, "period": 1}
                ]},
                {"name": "G", "kind": "partial", "boundary": []}
            ]
        }"#,
    );
    let output = run(&["sections", "validate", "-f", path_arg(&path)]);
    assert_eq!(code(&output), 0);
    let report = stdout_json(&output);
    assert_eq!(report["sections"][0]["sign"], "positive");
    assert_eq!(report["sections"][1]["sign"], "global");

    let path = scenario_file(
        "validate-bad.json",
        r#"{
            "schema": "aoc/1",
            "sections": [
                {"name": "B", "kind": "birkhoff", "boundary": [
                    {"orbit": "a", "mult": 2, "link": 0, "period": 1}
                ]}
            ]
        }"#,
    );
    let output = run(&["sections", "validate", "-f", path_arg(&path)]);
    assert_eq!(code(&output), 1, "Birkhoff links must be strictly negative");
    assert!(stdout_json(&output)["violation"].is_object());
}

#[test]
fn sections_link_eq_checks_the_residual() {
    let path = scenario_file(
        "linkeq.json",
        r#"{"schema": "aoc/1", "d1_into_2": 2, "d2_into_1": 3, "links": {"a": 1}}"#,
    );
    let output = run(&["sections", "link-eq", "-f", path_arg(&path)]);
    assert_eq!(code(&output), 0);
    assert_eq!(stdout_json(&output)["holds"], true);

    let path = scenario_file(
        "linkeq-bad.json",
        r#"{"schema": "aoc/1", "d1_into_2": 2, "d2_into_1": 0, "links": {"a": 1}}"#,
    );
    let output = run(&["sections", "link-eq", "-f", path_arg(&path)]);
    assert_eq!(code(&output), 1);
    let report = stdout_json(&output);
    assert_eq!(report["holds"], false);
    assert_eq!(report["residual"], 3);
}

#[test]
fn sections_exclude_rejects_the_signed_pair() {
    let path = scenario_file(
        "pair.json",
        r#"{
            "schema": "aoc/1",
            "first": {"name": "pos", "kind": "birkhoff", "boundary": [
                {"orbit": "a", "mult": 1, "link": -1, "period": 1}
            ]},
            "second": {"name": "neg", "kind": "partial", "boundary": [
                {"orbit": "a", "mult": -1, "link": 0, "period": 1}
            ]},
            "d1_into_2": 0,
            "d2_into_1": 0,
            "links": {"a": 0}
        }"#,
    );
    let output = run(&["sections", "exclude", "-f", path_arg(&path)]);
    assert_eq!(code(&output), 1, "incompatibility is a reject verdict");
    let report = stdout_json(&output);
    assert_eq!(report["verdict"], "incompatible");
    let reasons = report["reasons"].as_array().unwrap();
    assert_eq!(
        reasons.last().unwrap(),
        "shared link must be strictly positive but equation forces 0"
    );
}

#[test]
fn sections_classify_combines_evidence() {
    let path = scenario_file(
        "classify.json",
        r#"{
            "schema": "aoc/1",
            "sections": [
                {"name": "B", "kind": "birkhoff", "boundary": [
                    {"orbit": "a", "mult": 2, "link": -1, "period": 1}
                ]}
            ]
        }"#,
    );
    let output = run(&["sections", "classify", "-f", path_arg(&path)]);
    assert_eq!(code(&output), 0);
    assert_eq!(stdout_json(&output)["nature"], "positively-twisted");

    let path = scenario_file(
        "classify-empty.json",
        r#"{"schema": "aoc/1", "sections": []}"#,
    );
    let output = run(&["sections", "classify", "-f", path_arg(&path)]);
    assert_eq!(code(&output), 0);
    assert_eq!(stdout_json(&output)["nature"], "undetermined");
}

#[test]
fn sections_positivize_reports_coefficients_and_nature() {
    let path = scenario_file(
        "positivize.json",
        r#"{
            "schema": "aoc/1",
            "section": {"name": "B", "kind": "birkhoff", "boundary": [
                {"orbit": "a", "mult": -5, "link": -2, "period": 1},
                {"orbit": "b", "mult": 1, "link": -1, "period": 1}
            ]}
        }"#,
    );
    let output = run(&["sections", "positivize", "-f", path_arg(&path)]);
    assert_eq!(code(&output), 0);
    let report = stdout_json(&output);
    assert_eq!(report["coefficients"][0]["orbit"], "a");
    assert_eq!(report["coefficients"][0]["k"], 3);
    assert_eq!(report["coefficients"][1]["k"], 0);
    assert_eq!(report["section"]["boundary"][0]["mult"], 1);
    assert_eq!(report["section"]["boundary"][0]["link"], -2);
    assert_eq!(report["nature"], "positively-twisted");
}

#[test]
fn malformed_json_exits_two() {
    let path = scenario_file("garbage.json", "{ not json");
    let output = run(&["drift", "eval", "-f", path_arg(&path)]);
    assert_eq!(code(&output), 2);
    assert_eq!(stdout_json(&output)["error"]["kind"], "parse");
}

#[test]
fn unknown_fields_exit_two() {
    let path = scenario_file(
        "unknown-field.json",
        r#"{
            "schema": "aoc/1",
            "model": "positive",
            "point": {"x": "0", "y": "0"},
            "signs": {"stable": "+", "unstable": "+"},
            "surprise": true
        }"#,
    );
    let output = run(&["strip", "complete", "-f", path_arg(&path)]);
    assert_eq!(code(&output), 2);
}

#[test]
fn wrong_schema_versions_exit_two() {
    let path = scenario_file(
        "wrong-schema.json",
        r#"{
            "schema": "aoc/2",
            "model": "positive",
            "point": {"x": "0", "y": "0"},
            "signs": {"stable": "+", "unstable": "+"}
        }"#,
    );
    let output = run(&["strip", "complete", "-f", path_arg(&path)]);
    assert_eq!(code(&output), 2);
    assert_eq!(stdout_json(&output)["error"]["kind"], "schema");
}

#[test]
fn zero_denominators_exit_two_with_the_offset() {
    let path = scenario_file(
        "zero-denominator.json",
        r#"{
            "schema": "aoc/1",
            "punctures": [],
            "curve": [
                {"x": "1/0", "y": "0"},
                {"x": "1", "y": "0"},
                {"x": "1", "y": "1"}
            ]
        }"#,
    );
    let output = run(&["drift", "eval", "-f", path_arg(&path)]);
    assert_eq!(code(&output), 2);
    assert!(stdout_json(&output)["error"]["message"]
        .as_str()
        .unwrap()
        .contains("byte 2"));
}

#[test]
fn usage_errors_exit_two() {
    let output = run(&["drift", "check-local"]);
    assert_eq!(code(&output), 2);

    let output = run(&["no-such-command"]);
    assert_eq!(code(&output), 2);
}
