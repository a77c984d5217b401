//! Derives the nested pivot graphs of a voter who sees a poll of 100 voters
//! through concentric EMD balls of 1%, 3%, 7% and 17%.
//!
//! Run with `cargo run --example figure2`.

use pivot_vote::config::ModelSpec;
use pivot_vote::epistemic::{derive_structure, is_upward_closed, VoterContext};
use pivot_vote::format::{names_of, parse_election};
use pivot_vote::{Limits, VotingRule};

fn main() -> pivot_vote::Result<()> {
    let election = parse_election(include_str!("data/figure2.txt"))?;
    let names = &election.candidates;
    let poll = election.poll.clone().expect("the file carries a poll");
    let voter = &election.voters[0];
    let rule = VotingRule::plurality(names.len());
    let current = voter.ballot.clone().expect("the voter's ballot is given");
    let ctx = VoterContext::from_poll(&poll, current, voter.prefs.clone(), rule)?;

    let model = ModelSpec::parse("emd:1%,3%,7%,17%")?.resolve(poll.total())?;
    let limits = Limits::default();
    let structure = derive_structure(&model, &ctx, &limits)?;

    println!("others' tally {:?}", ctx.state.scores());
    for (j, g) in structure.levels().iter().enumerate() {
        let edges: Vec<String> = g
            .edges()
            .iter()
            .map(|&(a, b)| format!("{}-{}", names[a], names[b]))
            .collect();
        println!("H{} edges [{}]", j + 1, edges.join(" "));
    }
    let closure = is_upward_closed(&structure, None)?;
    match closure.witness {
        Some(order) => println!("upward closed under {}", names_of(order, names)),
        None => println!("not upward closed"),
    }
    Ok(())
}
