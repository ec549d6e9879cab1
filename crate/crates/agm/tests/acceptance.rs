//! Full acceptance suite: runs every criterion and prints one line per
//! criterion so a failing run shows exactly which claim broke.

use agm::acceptance;

#[test]
fn acceptance_criteria() {
    let seed = 20240;
    let report = acceptance::run_all(seed);
    for c in &report.criteria {
        println!(
            "criterion {:2} [{}] {} — {} ({} ms)",
            c.id,
            if c.passed { "pass" } else { "FAIL" },
            c.name,
            c.details,
            c.elapsed_ms
        );
    }
    println!(
        "conjecture sweep recorded {} violation record(s) (reported, not asserted)",
        report.violations.len()
    );
    let failed: Vec<_> = report
        .criteria
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.id)
        .collect();
    assert!(
        report.all_passed(),
        "failed criteria: {:?}",
        failed
    );
}
