//! One line per acceptance criterion; the test fails if any criterion does.

use ordjump::acceptance::{run_one, AcceptanceConfig};

#[test]
fn acceptance_criteria() {
    let cfg = AcceptanceConfig::default();
    let mut failed = Vec::new();
    println!();
    for id in 1..=10 {
        let r = run_one(id, &cfg);
        println!("{r} ({:.1}s)", r.elapsed.as_secs_f64());
        if !r.passed {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
