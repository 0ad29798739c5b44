//! Randomized verification of the structural inequalities behind the
//! decay certificates: the derivative envelope, the product bound, the
//! two growth bounds, the tanh lower bound, and the transfer range.

use sawmix::verify::{random_suite, CheckTarget};
use sawmix::Result;

fn main() -> Result<()> {
    let suite = random_suite(&CheckTarget::ALL, 500, 42)?;
    println!("seed {}, {} trials per target:\n", suite.seed, suite.trials);
    println!("{:>14} {:>8} {:>8} {:>14}", "target", "trials", "passes", "worst margin");
    for r in &suite.results {
        let margin = r
            .worst_margin
            .map(|m| format!("{m:.3e}"))
            .unwrap_or_else(|| "all vacuous".into());
        println!("{:>14} {:>8} {:>8} {:>14}", r.target.tag(), r.trials, r.passes, margin);
    }
    println!("\nall passed: {}", suite.all_passed());

    // a single target can be rerun alone with any seed
    let focused = random_suite(&[CheckTarget::EdgeBound], 2000, 7)?;
    let r = &focused.results[0];
    println!(
        "\nfocused {}: {}/{} passes, worst margin {:?}",
        r.target.tag(),
        r.passes,
        r.trials,
        r.worst_margin
    );
    Ok(())
}
