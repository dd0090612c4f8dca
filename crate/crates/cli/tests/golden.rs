//! CLI surface tests: determinism, exit codes, the mutation hook, and a
//! frozen golden document.

use std::process::Command;

fn ramforge(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ramforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn identical_requests_are_byte_identical() {
    for args in [
        vec!["report", "--field", "1,0,1"],
        vec!["thh", "--field", "-2,0,1", "--max-degree", "5"],
        vec!["classify", "--field", "-2,0,0,0,1", "--prime", "2"],
    ] {
        let a = ramforge(&args);
        let b = ramforge(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "determinism for {args:?}");
    }
}

#[test]
fn golden_factorization_of_gaussians_at_five() {
    let out = ramforge(&["factor", "--field", "1,0,1", "--prime", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let golden = serde_json::json!({
        "factors": [
            {"e": 1, "f": 1, "lift": [2, 1]},
            {"e": 1, "f": 1, "lift": [3, 1]},
        ],
        "squarefree": true,
    });
    assert_eq!(doc["results"], golden);
    assert_eq!(doc["schema"], "ramforge/1");
}

#[test]
fn thh_degree_three_entry_of_gaussians() {
    let out = ramforge(&["thh", "--field", "1,0,1", "--max-degree", "4"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let table = doc["results"]["table"].as_array().unwrap();
    let deg3 = table.iter().find(|r| r["degree"] == 3).unwrap();
    assert_eq!(deg3["free_rank"], 0);
    assert_eq!(deg3["invariant_factors"], serde_json::json!([4, 4]));
}

#[test]
fn mutation_hook_reaches_exit_three() {
    // all certificates are theorems: exit 3 is reachable only through
    // the deliberate corruption hook
    let clean = ramforge(&["verify-mainlemma", "--eisenstein", "p=2,e=2,g=0,u=1"]);
    assert_eq!(clean.status.code(), Some(0));
    let bad = ramforge(&[
        "verify-mainlemma",
        "--eisenstein",
        "p=2,e=2,g=0,u=1",
        "--corrupt",
    ]);
    assert_eq!(bad.status.code(), Some(3));
}

#[test]
fn input_errors_exit_one() {
    for args in [
        vec!["factor", "--field", "2,0,2", "--prime", "5"], // not monic
        vec!["factor", "--field", "1,0,1", "--prime", "4"], // composite prime
        vec!["thh", "--field", "3,0,1", "--max-degree", "3"], // not maximal
        vec!["check-solid", "--target", "nonsense"],
    ] {
        let out = ramforge(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn report_of_z_has_no_ramified_primes() {
    let out = ramforge(&["report", "--field", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["results"]["ramified_primes"], serde_json::json!([]));
    assert!(doc["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn table_format_renders() {
    let out = ramforge(&["omega1", "--field", "1,1,1", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("Z/3"), "{text}");
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("ramforge-test-out");
    let _ = std::fs::create_dir_all(&dir);
    let path = dir.join("omega1.json");
    let out = ramforge(&[
        "omega1",
        "--field",
        "1,0,1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let contents = std::fs::read_to_string(&path).unwrap();
    assert!(contents.contains("ramforge/1"));
    let _ = std::fs::remove_file(&path);
}

#[test]
fn environment_variable_sets_precision() {
    let out = Command::new(env!("CARGO_BIN_EXE_ramforge"))
        .args(["verify-l2", "--eisenstein", "p=3,e=3,g=0:0,u=1"])
        .env("RAMFORGE_PRECISION", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "env precision hits the guard");
}
