//! The acceptance suite as an integration-test target: one pass/fail line
//! per criterion, failing the test if any criterion fails.

use intersub_core::acceptance;

#[test]
fn acceptance_suite() {
    let results = acceptance::run_all(|r| println!("{}", r.line()));
    let failed: Vec<String> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.line())
        .collect();
    assert!(
        failed.is_empty(),
        "failed criteria:\n{}",
        failed.join("\n")
    );
}
