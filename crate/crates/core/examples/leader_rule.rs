//! Approval voting with the leader rule: approve everyone preferred to the
//! current leader, plus the leader when preferred to the runner-up. Under
//! the leader-rule structure that ballot dominates every other one.
//!
//! Run with `cargo run --example leader_rule`.

use pivot_vote::election::allowed_ballots;
use pivot_vote::heuristics::{build_model, leader_rule_ballot};
use pivot_vote::{od_check, Ballot, Limits, PreferenceOrder, ScoreVector, VoterContext, VotingRule};

fn main() -> pivot_vote::Result<()> {
    let rule = VotingRule::approval(5);
    let prefs = PreferenceOrder::strict(&[2, 0, 4, 1, 3])?;
    let state = ScoreVector::new(vec![14, 9, 11, 3, 12]);
    let ctx = VoterContext::new(state.clone(), Ballot::abstain(5), prefs.clone(), rule)?;
    let limits = Limits::default();
    let structure = build_model(&pivot_vote::HeuristicKind::LeaderRule, &ctx, &limits)?;
    let lr = leader_rule_ballot(&state, &prefs);
    println!("state {:?}, ranking c2 > c0 > c4 > c1 > c3", state.scores());
    println!("leader-rule ballot {:?}", lr.scores());
    for (j, g) in structure.levels().iter().enumerate() {
        println!("H{} edges {:?}", j + 1, g.edges());
    }
    let mut beaten = 0;
    let others: Vec<Ballot> = allowed_ballots(&rule)?.into_iter().filter(|b| *b != lr).collect();
    for b in &others {
        beaten += od_check(&lr, b, &prefs, &structure)?.dominates as usize;
    }
    println!("dominates {beaten} of the {} other approval ballots", others.len());
    Ok(())
}
