//! Reads an election file with weak orders and current ballots, writes it
//! back, and lists each listed voter's undominated moves.
//!
//! Run with `cargo run --example election_file`.

use pivot_vote::config::ModelSpec;
use pivot_vote::election::truthful_ballot;
use pivot_vote::format::{format_ballot, format_ranking, parse_election, write_election};
use pivot_vote::{uod_set, Limits, VoterContext, VotingRule};

fn main() -> pivot_vote::Result<()> {
    let text = include_str!("data/indifferent.txt");
    let election = parse_election(text)?;
    let written = write_election(&election);
    assert_eq!(parse_election(&written)?, election);
    print!("{written}");

    let names = &election.candidates;
    let rule = VotingRule::plurality(names.len());
    let poll = election.poll.clone().expect("poll");
    let model = ModelSpec::parse("linf:1,2")?.resolve(poll.total())?;
    for (i, v) in election.voters.iter().enumerate() {
        let current = match &v.ballot {
            Some(b) => b.clone(),
            None => truthful_ballot(&rule, &v.prefs, None)?,
        };
        let ctx = VoterContext::from_poll(&poll, current.clone(), v.prefs.clone(), rule)?;
        let moves: Vec<String> = uod_set(&ctx, &model, &Limits::default())?
            .iter()
            .map(|b| format_ballot(b, &rule, names))
            .collect();
        println!(
            "voter {i} ({}) voting {}: undominated moves [{}]",
            format_ranking(&v.prefs, names),
            format_ballot(&current, &rule, names),
            moves.join(" ")
        );
    }
    Ok(())
}
