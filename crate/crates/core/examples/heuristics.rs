//! Runs every heuristic on one plurality voter and compares its output with
//! the undominated ballots under the structure that accompanies it.
//!
//! Run with `cargo run --example heuristics`.

use pivot_vote::dominance::DominanceOracle;
use pivot_vote::format::format_ballot;
use pivot_vote::heuristics::evaluate_heuristic;
use pivot_vote::{
    Ballot, DominanceMode, EpistemicModel, HeuristicKind, Limits, Metric, PreferenceOrder, Radius,
    ScoreVector, VoterContext, VotingRule,
};

fn main() -> pivot_vote::Result<()> {
    let names: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
    let rule = VotingRule::plurality(4);
    // Others' tally: a and b lead closely, the voter's favourite d trails.
    let state = ScoreVector::new(vec![6, 5, 2, 1]);
    let prefs = PreferenceOrder::strict(&[3, 1, 2, 0])?;
    let ctx = VoterContext::new(state.clone(), Ballot::single(4, 3), prefs, rule)?;
    let scale = state.total() + 1;
    let metric = Metric::emd(scale);
    let kinds = [
        HeuristicKind::NotLast,
        HeuristicKind::LocalDominance { metric: metric.clone(), r: Radius::votes(1, scale) },
        HeuristicKind::TruthBiasLd {
            metric: metric.clone(),
            r1: Radius::votes(1, scale),
            r2: Radius::votes(3, scale),
        },
        HeuristicKind::LazyBiasLd {
            metric,
            r1: Radius::votes(1, scale),
            r2: Radius::votes(3, scale),
        },
        HeuristicKind::TPragmatist { t: 2 },
        HeuristicKind::TStar { t: 2 },
    ];
    let limits = Limits::default();
    let show = |set: &[Ballot]| {
        set.iter()
            .map(|b| format_ballot(b, &rule, &names))
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!("state {:?}, ranking d > b > c > a, voting d", state.scores());
    for kind in kinds {
        let mut ctx = ctx.clone();
        ctx.prefs = ctx.prefs.clone().with_bias(kind.bias());
        let output = evaluate_heuristic(&kind, &ctx, &limits)?;
        let model = EpistemicModel::Heuristic { heuristic: kind.clone() };
        let uod = DominanceOracle::new(&ctx, &model, DominanceMode::Graph, &limits)?.uod_set();
        println!("{:<16} outputs [{}]  undominated [{}]", kind.name(), show(&output), show(&uod));
    }
    Ok(())
}
