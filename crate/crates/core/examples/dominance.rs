//! Pairwise dominance with per-level traces, then the full OD and UOD sets
//! for the same voter.
//!
//! Run with `cargo run --example dominance`.

use pivot_vote::config::ModelSpec;
use pivot_vote::dominance::DominanceOracle;
use pivot_vote::epistemic::{derive_structure, VoterContext};
use pivot_vote::format::{format_ballot, parse_election};
use pivot_vote::{od_check, Ballot, DominanceMode, Limits, VotingRule};

fn main() -> pivot_vote::Result<()> {
    let election = parse_election(include_str!("data/figure2.txt"))?;
    let names = &election.candidates;
    let m = names.len();
    let voter = &election.voters[0];
    let rule = VotingRule::plurality(m);
    let poll = election.poll.clone().expect("poll");
    let ctx = VoterContext::from_poll(&poll, Ballot::single(m, 4), voter.prefs.clone(), rule)?;
    let model = ModelSpec::parse("emd:1%,3%,7%,17%")?.resolve(poll.total())?;
    let limits = Limits::default();
    let structure = derive_structure(&model, &ctx, &limits)?;

    // Voting c beats staying with e at level 3; b beats everything at level 2.
    for (new, cur) in [(2, 4), (1, 0), (1, 2), (4, 2)] {
        let v = od_check(&Ballot::single(m, new), &Ballot::single(m, cur), &voter.prefs, &structure)?;
        let trace: Vec<String> = v
            .trace
            .iter()
            .map(|t| format!("({},{},{})", t.safe, t.pivot, t.dom))
            .collect();
        println!(
            "{} over {}: {} level {:?} trace {}",
            names[new],
            names[cur],
            if v.dominates { "dominates" } else { "does not dominate" },
            v.level,
            trace.join(" ")
        );
    }

    let oracle = DominanceOracle::new(&ctx, &model, DominanceMode::Auto, &limits)?;
    let show = |set: Vec<Ballot>| {
        set.iter()
            .map(|b| format_ballot(b, &rule, names))
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!("dominate the current ballot: {}", show(oracle.od_set()));
    println!("undominated among those:     {}", show(oracle.uod_set()));
    Ok(())
}
