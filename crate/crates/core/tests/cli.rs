use std::process::{Command, Output};

use serde_json::Value;

fn bcinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcinv"))
        .args(args)
        .env_remove("BCINV_CARDINALITY_CAP")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn records(out: &Output) -> Vec<Value> {
    stdout(out)
        .lines()
        .map(|l| serde_json::from_str(l).expect("every line is JSON"))
        .collect()
}

#[test]
fn bc_inverse_found_in_z6() {
    let out = bcinv(&[
        "inverse", "--ring", "zn:6", "--kind", "bc", "--a", "2", "--b", "4", "--c", "4",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("found y = 2"), "{}", stdout(&out));
}

#[test]
fn group_inverse_of_one() {
    let out = bcinv(&[
        "inverse",
        "--ring",
        "zn:6",
        "--kind",
        "group",
        "--a",
        "1",
        "--format",
        "structured",
    ]);
    assert_eq!(code(&out), 0);
    let recs = records(&out);
    assert_eq!(recs[0]["record"], "header");
    assert_eq!(recs[1]["result"]["status"], "found");
    assert_eq!(recs[1]["result"]["value"], 1);
}

#[test]
fn bc_inverse_missing_in_z4() {
    let out = bcinv(&[
        "inverse", "--ring", "zn:4", "--kind", "bc", "--a", "1", "--b", "2", "--c", "2",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("not found"));
}

#[test]
fn every_inverse_kind_runs() {
    let cases: [&[&str]; 7] = [
        &["--kind", "bc", "--a", "3", "--b", "3", "--c", "3"],
        &["--kind", "hybrid", "--a", "3", "--b", "3", "--c", "3"],
        &["--kind", "annihilator", "--a", "3", "--b", "3", "--c", "3"],
        &["--kind", "group", "--a", "3"],
        &["--kind", "drazin", "--a", "3"],
        &["--kind", "bott-duffin", "--a", "1", "--e", "3", "--f", "3"],
        &["--kind", "image-kernel", "--a", "1", "--p", "3", "--q", "4"],
    ];
    for args in cases {
        let mut full = vec!["inverse", "--ring", "zn:6"];
        full.extend_from_slice(args);
        let out = bcinv(&full);
        assert_eq!(
            code(&out),
            0,
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(
            stdout(&out).contains("found y = 3"),
            "{args:?}: {}",
            stdout(&out)
        );
    }
}

#[test]
fn ideals_of_two_in_z6() {
    let out = bcinv(&[
        "ideals",
        "--ring",
        "zn:6",
        "--a",
        "2",
        "--format",
        "structured",
    ]);
    assert_eq!(code(&out), 0);
    let r = &records(&out)[1];
    assert_eq!(r["aR"], serde_json::json!([0, 2, 4]));
    assert_eq!(r["r(a)"], serde_json::json!([0, 3]));
    assert_eq!(r["rl(a)"], serde_json::json!([0, 2, 4]));
}

#[test]
fn ideals_of_zero_in_z6() {
    let out = bcinv(&[
        "ideals",
        "--ring",
        "zn:6",
        "--a",
        "0",
        "--format",
        "structured",
    ]);
    let r = &records(&out)[1];
    assert_eq!(r["aR"], serde_json::json!([0]));
    assert_eq!(r["r(a)"], serde_json::json!([0, 1, 2, 3, 4, 5]));
}

#[test]
fn ideals_of_rank_one_idempotent() {
    let out = bcinv(&[
        "ideals",
        "--ring",
        "mat:2:zn:2",
        "--a",
        "1,0,0,0",
        "--format",
        "structured",
    ]);
    assert_eq!(code(&out), 0);
    let r = &records(&out)[1];
    // e = diag(1,0): eR has a zero second row, Re a zero second column.
    for key in ["aR", "Ra", "l(a)", "r(a)"] {
        assert_eq!(r[key].as_array().unwrap().len(), 4, "{key}");
    }
    // An idempotent e has eR = r(1-e), so rl and lr give back the principal ideals.
    assert_eq!(r["rl(a)"], r["aR"]);
    assert_eq!(r["lr(a)"], r["Ra"]);
}

#[test]
fn verify_examples() {
    let out = bcinv(&[
        "verify",
        "--ring",
        "zn:2",
        "--theorem",
        "thm-3.4-equiv",
        "--format",
        "structured",
    ]);
    assert_eq!(code(&out), 0);
    let recs = records(&out);
    assert_eq!(recs[1]["theorem"], "thm-3.4-equiv");
    assert_eq!(recs[1]["instances"], 8);
    assert_eq!(recs.last().unwrap()["status"], "pass");

    let out = bcinv(&[
        "verify",
        "--ring",
        "mat:2:zn:2",
        "--theorem",
        "lem-4.1-identities",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}

#[test]
fn unknown_theorem_lists_ids_without_stdout() {
    let out = bcinv(&["verify", "--ring", "zn:6", "--theorem", "thm-9.9"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("thm-9.9")
            && err.contains("bc-routes")
            && err.contains("thm-4.5-mixed-idempotents")
    );
}

#[test]
fn usage_errors_exit_two_silently() {
    let cases: [&[&str]; 6] = [
        &[
            "inverse", "--ring", "zn:6", "--kind", "bc", "--a", "7", "--b", "1", "--c", "1",
        ],
        &[
            "inverse", "--ring", "zn:6", "--kind", "bc", "--a", "1", "--b", "1",
        ],
        &[
            "inverse",
            "--ring",
            "zn:6",
            "--kind",
            "bott-duffin",
            "--a",
            "1",
            "--e",
            "2",
            "--f",
            "3",
        ],
        &["ideals", "--ring", "zq:6", "--a", "1"],
        &["ideals", "--a", "1"],
        &["mine", "--family", "zn", "--max-n", "4", "--target", "nope"],
    ];
    for args in cases {
        let out = bcinv(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?} printed {}", stdout(&out));
        assert!(!out.stderr.is_empty());
    }
    let out = bcinv(&[
        "inverse", "--ring", "zn:6", "--kind", "bc", "--a", "7", "--b", "1", "--c", "1",
    ]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("`7`"));
}

#[test]
fn mine_reports_none_found_with_exit_zero() {
    let out = bcinv(&[
        "mine",
        "--family",
        "zn",
        "--max-n",
        "2",
        "--target",
        "iii-not-iv",
        "--format",
        "structured",
    ]);
    assert_eq!(code(&out), 0);
    let r = &records(&out)[1];
    assert_eq!(r["outcome"], "none-found");
    assert_eq!(r["witnesses"], serde_json::json!([]));

    let out = bcinv(&[
        "mine",
        "--family",
        "mat2",
        "--max-n",
        "2",
        "--target",
        "annihilator-not-bc",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("none found"));
}

#[test]
fn cardinality_cap_from_env_and_flag() {
    let out = Command::new(env!("CARGO_BIN_EXE_bcinv"))
        .args(["ideals", "--ring", "zn:6", "--a", "1"])
        .env("BCINV_CARDINALITY_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));

    let out = Command::new(env!("CARGO_BIN_EXE_bcinv"))
        .args(["--cap", "6", "ideals", "--ring", "zn:6", "--a", "1"])
        .env("BCINV_CARDINALITY_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bcinv.toml");
    std::fs::write(&path, "ring = \"zn:6\"\nformat = \"structured\"\n").unwrap();
    let config = path.to_str().unwrap();

    let out = bcinv(&["--config", config, "ideals", "--a", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(records(&out)[1]["ring"], "zn:6");

    let out = bcinv(&["--config", config, "ideals", "--ring", "zn:4", "--a", "2"]);
    assert_eq!(records(&out)[1]["ring"], "zn:4");

    let out = bcinv(&[
        "--config", config, "--format", "human", "ideals", "--a", "2",
    ]);
    assert!(stdout(&out).starts_with("ring zn:6"));

    std::fs::write(&path, "rings = \"zn:6\"\n").unwrap();
    let out = bcinv(&["--config", config, "ideals", "--a", "2"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
}
