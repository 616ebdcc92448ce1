//! Every named check in the catalogue runs clean.

use pg240::checks::{run_check, CheckId, CheckOptions};
use pg240::world::World;

/// The brute-force oracle rescans all 5,160,960 rank-8 elements; slow, so
/// opt in with `cargo test -- --ignored`.
#[test]
#[ignore]
fn deep_kernel_scan_agrees() {
    let w = World::get();
    let report = run_check(CheckId::ThmFaithful, w, &CheckOptions { deep: true });
    assert!(report.passed, "{:?}", report.failure);
    assert!(report
        .details
        .iter()
        .any(|d| d.contains("full 5,160,960-element scan")));
}

#[test]
fn all_twenty_one_checks_pass() {
    let w = World::get();
    let opts = CheckOptions::default();
    let mut failures = Vec::new();
    for id in CheckId::ALL {
        let report = run_check(id, w, &opts);
        println!(
            "{:<16} {} ({} ms)",
            report.id,
            if report.passed { "pass" } else { "FAIL" },
            report.millis
        );
        if !report.passed {
            failures.push(format!("{}: {}", report.id, report.failure.unwrap()));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
