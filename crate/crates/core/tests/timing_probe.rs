//! Scratch timing probe, not part of the suite. Run with --ignored.

use std::time::Instant;
use tropical_lefschetz::run_all;

#[test]
#[ignore]
fn time_the_whole_suite() {
    let t0 = Instant::now();
    for outcome in run_all(17) {
        println!(
            "criterion {:02} [{}]: {} — {} ({:?} elapsed)",
            outcome.id,
            outcome.name,
            if outcome.pass { "PASS" } else { "FAIL" },
            outcome.detail,
            t0.elapsed()
        );
    }
}
