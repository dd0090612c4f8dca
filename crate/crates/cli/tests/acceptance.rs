//! Acceptance criterion 11: robustness of the CLI surface. The Dedekind
//! criterion downgrades a non-maximal order gracefully (exit 0 with a
//! warning), and the precision guard aborts with exit 2 when the
//! truncation cannot certify a wild datum.

use std::process::Command;

fn ramforge(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ramforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn criterion_11_robustness() {
    // x^2 + 3 is not maximal at 2: the dossier still succeeds, with a
    // warning and the invalid sections omitted
    let out = ramforge(&["report", "--field", "3,0,1"]);
    assert_eq!(out.status.code(), Some(0), "graceful downgrade");
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let warnings = doc["warnings"].as_array().unwrap();
    assert!(
        warnings.iter().any(|w| w.as_str().unwrap().contains("not maximal")),
        "warning names the failure"
    );
    assert!(doc["results"]["thh"].is_string(), "THH table withheld");
    assert!(doc["results"]["hh"].is_object(), "HH table still present");

    // the d = 5 wild datum x^3 - 3 at 3, forced to precision 3: the
    // guard zone swallows every valuation, so the run aborts with exit 2
    let out = ramforge(&[
        "verify-l2",
        "--eisenstein",
        "p=3,e=3,g=0:0,u=1",
        "--precision",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2), "precision guard exit code");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("precision"), "stderr names the guard: {err}");

    // the same datum at full precision passes
    let out = ramforge(&["verify-l2", "--eisenstein", "p=3,e=3,g=0:0,u=1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["results"]["differential_exponent"], 5);

    println!("ACCEPTANCE 11 (non-maximal downgrade and precision guard): PASS");
}
