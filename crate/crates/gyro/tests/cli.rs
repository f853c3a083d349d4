//! End-to-end tests of the `gyro` binary: exit codes, report shapes, and
//! determinism of the emitted JSON.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn gyro(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gyro"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_group_table_passes() {
    let out = gyro(&["verify", fixture("z4.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["axioms"]["g3_ok"], true);
    assert_eq!(v["axioms"]["g4_ok"], true);
    assert_eq!(v["axioms"]["is_group"], true);
    let items = v["identities"]["items"].as_array().unwrap();
    assert_eq!(items.len(), 7);
    assert!(items.iter().all(|i| i["ok"] == true));
}

#[test]
fn verify_text_format_inferred_from_extension() {
    let out = gyro(&["verify", fixture("s3.txt").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["axioms"]["is_group"], true);
}

#[test]
fn verify_nongyrogroup_loop_fails_with_witness() {
    let out = gyro(&["verify", fixture("loop5_reject.json").to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    let violations = v["axioms"]["violations"].as_array().unwrap();
    assert!(!violations.is_empty());
    // Each violation names the broken axiom and carries a concrete witness.
    for viol in violations {
        assert!(viol["axiom"].as_str().unwrap().starts_with('G'));
        assert!(!viol["witness"].as_array().unwrap().is_empty());
    }
}

#[test]
fn verify_structurally_broken_table_is_usage_error() {
    let out = gyro(&["verify", fixture("bad_row.json").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("row 1"), "stderr was: {err}");
}

#[test]
fn verify_missing_file_is_usage_error() {
    let out = gyro(&["verify", "/nonexistent/table.json"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn classify_subgroup_of_z4() {
    let out = gyro(&["classify", fixture("z4.json").to_str().unwrap(), "--subset", "0,2"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["subset"], serde_json::json!([0, 2]));
    for flag in ["is_sub", "is_l", "is_strongly_l", "is_normal_sufficient"] {
        assert_eq!(v["flags"][flag], true, "{flag}");
    }
}

#[test]
fn classify_nonclosed_subset_reports_witness_and_exit_one() {
    let out = gyro(&["classify", fixture("z4.json").to_str().unwrap(), "--subset", "0,1"]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["flags"]["is_sub"], false);
    assert_eq!(v["witnesses"]["op_closure"], serde_json::json!([1, 1, 2]));
}

#[test]
fn classify_all_enumerates_s3() {
    let out = gyro(&["classify", fixture("s3.json").to_str().unwrap(), "--all"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["exhaustive"], true);
    // {e}, three order-2 subgroups, the rotation subgroup, and S3 itself.
    assert_eq!(v["subgyrogroups"].as_array().unwrap().len(), 6);
}

#[test]
fn classify_requires_subset_xor_all() {
    let neither = gyro(&["classify", fixture("z4.json").to_str().unwrap()]);
    assert_eq!(code(&neither), 2);
    let both = gyro(&["classify", fixture("z4.json").to_str().unwrap(), "--subset", "0", "--all"]);
    assert_eq!(code(&both), 2);
}

#[test]
fn classify_out_of_range_subset_is_usage_error() {
    let out = gyro(&["classify", fixture("z4.json").to_str().unwrap(), "--subset", "0,9"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn quotient_z4_mod_two_passes_all_checks() {
    let out = gyro(&["quotient", fixture("z4.json").to_str().unwrap(), "--subset", "0,2"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["cosets"], serde_json::json!([[0, 2], [1, 3]]));
    assert_eq!(v["projection"], serde_json::json!([0, 1, 0, 1]));
    let checks = v["checks"].as_object().unwrap();
    let expected = [
        "coset_associativity",
        "homogeneity",
        "intersection_identity",
        "partition",
        "saturation",
        "subgyrogroup",
        "translation_commute",
        "translations_bijective",
    ];
    assert_eq!(checks.keys().collect::<Vec<_>>(), expected);
    assert!(checks.values().all(|c| c["ok"] == true));
}

#[test]
fn quotient_by_nonsubgroup_reports_finding() {
    let out = gyro(&["quotient", fixture("z4.json").to_str().unwrap(), "--subset", "0,1"]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["checks"]["subgyrogroup"]["ok"], false);
    assert_eq!(v["cosets"], serde_json::Value::Null);
}

#[test]
fn quotient_output_is_seed_stable() {
    let s3 = fixture("s3.json");
    let args = ["quotient", s3.to_str().unwrap(), "--subset", "0,4,5", "--seed", "7"];
    let a = gyro(&args);
    let b = gyro(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn models_sampler_passes_and_reports_all_checks() {
    for model in ["mobius", "einstein"] {
        let out = gyro(&["models", "--model", model, "--samples", "2000", "--seed", "3"]);
        assert_eq!(code(&out), 0, "{model}");
        let v = stdout_json(&out);
        assert_eq!(v["model"], model);
        assert_eq!(v["samples"], 2000);
        let checks = v["checks"].as_array().unwrap();
        assert_eq!(checks.len(), 12);
        for c in checks {
            assert_eq!(c["ok"], true, "{model}: {}", c["name"]);
        }
    }
}

#[test]
fn models_zero_samples_is_usage_error() {
    let out = gyro(&["models", "--model", "mobius", "--samples", "0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn search_small_order_finds_no_witness() {
    let out = gyro(&["search", "--max-order", "4"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["witness"], serde_json::Value::Null);
    assert_eq!(v["per_order"].as_array().unwrap().len(), 4);
    assert!(v["subgyrogroups_classified"].as_u64().unwrap() > 0);
}

#[test]
fn search_stdout_is_identical_across_worker_counts() {
    let one = gyro(&["search", "--max-order", "4", "--workers", "1"]);
    let four = gyro(&["search", "--max-order", "4", "--workers", "4"]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn search_scans_catalog_directory() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(fixture("g8.json"), dir.path().join("g8.json")).unwrap();
    let out = gyro(&["search", "--max-order", "2", "--catalog", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["catalog_tables"], 1);
    // Generated tables are written back in the standard JSON format.
    assert!(dir.path().join("gen_order1_0000.json").exists());
    assert!(dir.path().join("gen_order2_0000.json").exists());
}

#[test]
fn search_catalog_with_invalid_table_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(fixture("loop5_reject.json"), dir.path().join("loop5.json")).unwrap();
    let out = gyro(&["search", "--max-order", "1", "--catalog", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn search_above_exhaustive_bound_requires_allow_large() {
    let out = gyro(&["search", "--max-order", "7"]);
    assert_eq!(code(&out), 2);
}
