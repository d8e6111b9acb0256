//! Acceptance suite: runs the full verification matrix and prints one
//! pass/fail line per criterion. Criteria 1 and 7 carry runtime budgets.

use std::time::Instant;

use rank1_core::numerics::acceptance::criteria;

#[test]
fn acceptance() {
    let mut all_pass = true;
    let mut failures = Vec::new();

    for criterion in criteria() {
        let start = Instant::now();
        let reports = (criterion.run)();
        let elapsed = start.elapsed();
        let pass = reports.iter().all(|r| r.pass);
        println!(
            "ACCEPT {:>2} [{}] {} ({} report lines, {:.2}s)",
            criterion.id,
            if pass { "PASS" } else { "FAIL" },
            criterion.title,
            reports.len(),
            elapsed.as_secs_f64(),
        );
        for r in reports.iter().filter(|r| !r.pass) {
            println!(
                "        FAIL {} ring={} n={} seed={} max_residual={:.3e}",
                r.check, r.ring, r.n, r.seed, r.max_residual
            );
        }
        if !pass {
            all_pass = false;
            failures.push(criterion.id);
        }

        match criterion.id {
            1 => assert!(
                elapsed.as_secs_f64() < 10.0,
                "criterion 1 exceeded its 10 s budget: {:.2}s",
                elapsed.as_secs_f64()
            ),
            7 => assert!(
                elapsed.as_secs_f64() < 60.0,
                "criterion 7 exceeded its 60 s budget: {:.2}s",
                elapsed.as_secs_f64()
            ),
            _ => {}
        }
    }

    assert!(all_pass, "failing criteria: {failures:?}");
}
