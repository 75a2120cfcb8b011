//! Exhaustive check of where a walk returns once a chord joins two vacant dots.

use chord_genus::plugs::{tally_all_configurations, LemmaTally};
use chord_genus::stats::enumerate_partial_diagrams;

fn main() -> chord_genus::Result<()> {
    for n in 2..=4 {
        for k in 0..n {
            let mut t = LemmaTally::default();
            let diagrams = enumerate_partial_diagrams(n, k, |p| t.merge(tally_all_configurations(p)))?;
            println!(
                "n={n} k={k}: {diagrams} partial diagrams, {} cases, {} returns, violations {}/{}",
                t.cases, t.returns, t.entrance_violations, t.neighbor_violations
            );
        }
    }
    Ok(())
}
