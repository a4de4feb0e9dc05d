//! End-to-end runs of the binary: exit codes, output shape, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use fusionframe::{alternate_dual_check, FamilySpecDocument, TolerancePolicy};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_str()
        .expect("fixture paths are utf-8")
        .to_string()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_str()
        .expect("data paths are utf-8")
        .to_string()
}

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fusionframe"));
    cmd.env_remove("FUSIONFRAME_TOL");
    for (key, value) in envs {
        cmd.env(key, value);
    }
    cmd.args(args);
    cmd.output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is utf-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is utf-8")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("process exited")
}

fn load(path: &str) -> FamilySpecDocument {
    let text = std::fs::read_to_string(path).expect("file reads");
    FamilySpecDocument::from_json(&text).expect("fixture parses")
}

#[test]
fn analyze_reports_bounds() {
    let out = run(&["analyze", &fixture("three_lines.json")], &[]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("lower bound: 2.92893218813e-1"));
    assert!(text.contains("upper bound: 1.70710678119e0"));
    assert!(text.contains("fusion frame: yes"));
}

#[test]
fn analyze_machine_output_parses() {
    let out = run(
        &[
            "analyze",
            &fixture("three_lines.json"),
            "--format",
            "machine",
        ],
        &[],
    );
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(value["name"], "three lines");
    assert_eq!(value["is_fusion_frame"], true);
}

#[test]
fn analyze_flags_non_spanning_family() {
    let out = run(&["analyze", &data("single_line.json")], &[]);
    assert_eq!(code(&out), 3);
}

#[test]
fn malformed_and_invalid_documents_are_input_errors() {
    let out = run(&["analyze", &data("malformed.json")], &[]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).starts_with("error: "));

    let out = run(&["analyze", &data("bad_weight.json")], &[]);
    assert_eq!(code(&out), 2);

    let out = run(&["analyze", &data("missing_file.json")], &[]);
    assert_eq!(code(&out), 2);
}

#[test]
fn check_dual_accepts_the_axis_pair() {
    let out = run(
        &[
            "check-dual",
            &fixture("six_axes_w.json"),
            &fixture("six_axes_v.json"),
        ],
        &[],
    );
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("dual: yes"));
}

#[test]
fn check_dual_rejects_the_scaled_family() {
    let out = run(
        &[
            "check-dual",
            &fixture("four_lines.json"),
            &fixture("four_lines_scaled_dual.json"),
        ],
        &[],
    );
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("residual: 8.25641025641e-1"));
    assert!(stdout(&out).contains("dual: no"));
}

#[test]
fn check_dual_both_prints_each_direction() {
    let out = run(
        &[
            "check-dual",
            &fixture("six_axes_w.json"),
            &fixture("six_axes_v.json"),
            "--both",
        ],
        &[],
    );
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("direction: forward"));
    assert!(text.contains("direction: reverse"));
    assert!(text.contains("residual: 7.50000000000e-1"));
}

#[test]
fn check_dual_mismatched_member_counts_is_an_input_error() {
    let out = run(
        &[
            "check-dual",
            &fixture("three_lines.json"),
            &fixture("four_lines.json"),
        ],
        &[],
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn output_is_byte_deterministic() {
    let first = run(&["verify-paper"], &[]);
    let second = run(&["verify-paper"], &[]);
    assert_eq!(first.stdout, second.stdout);

    let first = run(&["analyze", &fixture("six_axes_w.json")], &[]);
    let second = run(&["analyze", &fixture("six_axes_w.json")], &[]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn tolerance_env_and_flag_precedence() {
    let w = fixture("four_lines.json");
    let v = fixture("four_lines_scaled_dual.json");

    let env_only = run(&["check-dual", &w, &v], &[("FUSIONFRAME_TOL", "1.0")]);
    assert_eq!(code(&env_only), 0);

    let flag_wins = run(
        &["check-dual", &w, &v, "--tol", "1e-8"],
        &[("FUSIONFRAME_TOL", "1.0")],
    );
    assert_eq!(code(&flag_wins), 3);

    let bad_env = run(&["check-dual", &w, &v], &[("FUSIONFRAME_TOL", "banana")]);
    assert_eq!(code(&bad_env), 2);

    let bad_flag = run(&["check-dual", &w, &v, "--tol", "-1.0"], &[]);
    assert_eq!(code(&bad_flag), 2);
}

#[test]
fn construct_canonical_round_trips() {
    let tol = TolerancePolicy::default();
    let out = run(&["construct", &fixture("three_lines.json")], &[]);
    assert_eq!(code(&out), 0);

    let doc = FamilySpecDocument::from_json(&stdout(&out)).expect("printed document parses");
    let (printed, _) = doc.build(&tol).expect("printed document builds");

    let (lines, _) = load(&fixture("three_lines.json")).build(&tol).unwrap();
    let canonical = lines.canonical_dual(&tol).unwrap();
    assert_eq!(printed.len(), canonical.len());
    for (a, b) in printed.members().iter().zip(canonical.members()) {
        assert!(a.subspace().approx_eq(b.subspace(), &tol));
        assert!((a.weight() - b.weight()).abs() <= 1e-12);
    }
}

#[test]
fn construct_augment_builds_the_first_family() {
    let tol = TolerancePolicy::default();
    let out = run(
        &[
            "construct",
            &fixture("three_lines.json"),
            "--mode",
            "augment",
            "--h-file",
            &fixture("augment_h_1.json"),
        ],
        &[],
    );
    assert_eq!(code(&out), 0);

    let doc = FamilySpecDocument::from_json(&stdout(&out)).expect("printed document parses");
    let (printed, _) = doc.build(&tol).expect("printed document builds");
    let (target, _) = load(&fixture("augmented_dual_1.json")).build(&tol).unwrap();
    for (a, b) in printed.members().iter().zip(target.members()) {
        assert!(a.subspace().approx_eq(b.subspace(), &tol));
    }

    let (lines, _) = load(&fixture("three_lines.json")).build(&tol).unwrap();
    assert!(
        alternate_dual_check(&lines, &printed, &tol)
            .unwrap()
            .is_dual
    );
}

#[test]
fn construct_augment_requires_the_vector_file() {
    let out = run(
        &[
            "construct",
            &fixture("three_lines.json"),
            "--mode",
            "augment",
        ],
        &[],
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn construct_augment_rejects_weighted_families() {
    let out = run(
        &[
            "construct",
            &fixture("four_lines.json"),
            "--mode",
            "augment",
            "--h-file",
            &fixture("augment_h_1.json"),
        ],
        &[],
    );
    assert_eq!(code(&out), 4);
}

#[test]
fn construct_augment_rejects_overlapping_vectors() {
    let out = run(
        &[
            "construct",
            &fixture("three_lines.json"),
            "--mode",
            "augment",
            "--h-file",
            &data("bad_h.json"),
        ],
        &[],
    );
    assert_eq!(code(&out), 5);
}

#[test]
fn enumerate_lists_every_basis_vector_dual() {
    let out = run(
        &[
            "construct",
            &fixture("three_lines.json"),
            "--mode",
            "enumerate",
        ],
        &[],
    );
    assert_eq!(code(&out), 0);
    let docs: Vec<FamilySpecDocument> =
        serde_json::from_str(&stdout(&out)).expect("valid json array");
    assert_eq!(docs.len(), 27);
}

#[test]
fn enumerate_honors_the_cap() {
    let out = run(
        &[
            "construct",
            &fixture("three_lines.json"),
            "--mode",
            "enumerate",
            "--cap",
            "5",
        ],
        &[],
    );
    assert_eq!(code(&out), 0);
    let docs: Vec<FamilySpecDocument> =
        serde_json::from_str(&stdout(&out)).expect("valid json array");
    assert_eq!(docs.len(), 5);
    assert!(stderr(&out).contains("stopped after 5"));
}

#[test]
fn enumerate_with_seed_is_deterministic() {
    let args = [
        "construct",
        &fixture("three_lines.json"),
        "--mode",
        "enumerate",
        "--seed",
        "7",
    ];
    let first = run(&args.iter().map(|s| &**s).collect::<Vec<_>>(), &[]);
    let second = run(&args.iter().map(|s| &**s).collect::<Vec<_>>(), &[]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn riesz_verdicts() {
    let out = run(&["riesz", &fixture("three_lines.json")], &[]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("fusion riesz basis: yes"));

    let out = run(&["riesz", &fixture("three_lines_plane_dual.json")], &[]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("fusion riesz basis: no"));
}

#[test]
fn discrete_pipeline_runs_and_serializes() {
    let out = run(&["discrete", &fixture("four_lines.json")], &[]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("lifted dual verified: yes"));

    let out = run(
        &[
            "discrete",
            &fixture("four_lines.json"),
            "--format",
            "machine",
        ],
        &[],
    );
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(value["lifted_is_dual"], true);
    assert_eq!(value["vectors"].as_array().unwrap().len(), 4);

    let out = run(&["discrete", &fixture("three_lines.json")], &[]);
    assert_eq!(code(&out), 0);
}

#[test]
fn verify_paper_passes_filters_and_serializes() {
    let all = run(&["verify-paper"], &[]);
    assert_eq!(code(&all), 0);
    let text = stdout(&all);
    assert_eq!(text.lines().filter(|l| l.ends_with(" fail")).count(), 0);
    assert!(text.lines().last().unwrap().ends_with("0 failed"));

    let four = run(&["verify-paper", "--filter", "four"], &[]);
    assert_eq!(code(&four), 0);
    for line in stdout(&four).lines() {
        assert!(
            line.starts_with("four-lines") || line.ends_with("failed"),
            "unexpected line: {line}"
        );
    }

    let none = run(&["verify-paper", "--filter", "nonsense"], &[]);
    assert_eq!(code(&none), 2);

    let machine = run(&["verify-paper", "--format", "machine"], &[]);
    assert_eq!(code(&machine), 0);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&machine)).expect("valid json");
    assert!(rows.as_array().unwrap().len() >= 40);
}
