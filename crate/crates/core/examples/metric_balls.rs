//! Balls of score vectors under each metric, and the shape of the pivot
//! graphs they induce: cliqued for candidate-wise metrics, upward closed
//! for EMD and l1. Under veto the l-infinity structure can lose the clique.
//!
//! Run with `cargo run --example metric_balls`.

use pivot_vote::epistemic::{is_cliqued, is_upward_closed, pivot_structure, TaggedStates};
use pivot_vote::metrics::ball;
use pivot_vote::{Limits, Metric, MetricKind, Radius, ScoreVector, VotingRule};

fn main() -> pivot_vote::Result<()> {
    let limits = Limits::default();
    let center = ScoreVector::new(vec![7, 5, 4, 1]);
    let n = center.total() + 1;
    let metrics = [
        ("emd", Metric::emd(n)),
        ("l1", Metric::l1(n, false)),
        ("linf", Metric::linf(n)),
        ("candidate-wise", Metric::new(MetricKind::CandidateWise { weights: vec![1, 2, 1, 2] }, n)),
    ];
    let radii = [Radius::votes(1, n), Radius::votes(2, n)];
    for rule in [VotingRule::plurality(4), VotingRule::veto(4)] {
        println!("{rule} around {:?}", center.scores());
        for (name, metric) in &metrics {
            let size = ball(metric, &center, radii[1])?.len();
            let tagged = TaggedStates::concentric(metric, &center, &radii, &limits)?;
            let s = pivot_structure(&tagged, &rule, &limits)?;
            let edges: Vec<usize> = s.levels().iter().map(|g| g.edge_count()).collect();
            println!(
                "  {name:<15} ball of {size:>3} states, edges per level {edges:?}, cliqued {}, upward closed {}",
                is_cliqued(&s),
                is_upward_closed(&s, None)?.holds
            );
        }
    }

    // Two pairs can tie for the top veto score without the third pair.
    let veto = VotingRule::veto(3);
    let c = ScoreVector::new(vec![0, 2, 0]);
    let tagged = TaggedStates::concentric(&Metric::linf(3), &c, &[Radius::votes(1, 3)], &limits)?;
    let s = pivot_structure(&tagged, &veto, &limits)?;
    println!("veto, linf radius 1 around [0, 2, 0]: edges {:?}, cliqued {}", s.levels()[0].edges(), is_cliqued(&s));
    Ok(())
}
