//! Checks the sharp pivot property of concentric balls around a fixed poll
//! share as the population grows.
//!
//! Run with `cargo run --release --example spp_scan`.

use num_rational::Ratio;
use pivot_vote::epistemic::spp_scan;
use pivot_vote::{Limits, MetricKind, VotingRule};

fn main() -> pivot_vote::Result<()> {
    let shares = [0.37, 0.33, 0.18, 0.12];
    let radii = [Ratio::new(1, 100), Ratio::new(2, 100)];
    let rule = VotingRule::plurality(shares.len());
    let sizes = [20, 50, 100, 200, 500];
    let rows = spp_scan(&shares, &sizes, &MetricKind::Emd, &radii, &rule, &Limits::default())?;
    for row in rows {
        match row.report {
            Some(r) if r.holds => println!("n={:<4} poll {:?}: holds", row.n, row.state.scores()),
            Some(r) => println!(
                "n={:<4} poll {:?}: {} violations, first {:?}",
                row.n,
                row.state.scores(),
                r.violation_count,
                r.violations.first()
            ),
            None => println!("n={:<4} skipped: {}", row.n, row.error.unwrap_or_default()),
        }
    }
    Ok(())
}
