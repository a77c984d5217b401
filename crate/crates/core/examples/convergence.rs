//! Iterated dominance moves: one plurality run step by step, batches under
//! plurality and veto, and Borda with full information as a control that
//! is allowed to cycle.
//!
//! Run with `cargo run --release --example convergence`.

use pivot_vote::dynamics::{
    batch_verify, run, BatchConfig, BatchReport, Game, ModelFamily, MovePolicy, Scheduler,
    SchedulerFamily, Status,
};
use pivot_vote::{Ballot, EpistemicModel, Limits, Metric, PreferenceOrder, Radius, RuleKind, VotingRule};

fn batch(rule: RuleKind, models: ModelFamily, policy: MovePolicy) -> pivot_vote::Result<BatchReport> {
    batch_verify(&BatchConfig {
        rule,
        m: (3, 4),
        n: (3, 8),
        models,
        schedulers: SchedulerFamily::Mixed,
        policy,
        trials: 200,
        seed: 11,
        truthful_start: false,
        mode: Default::default(),
        step_cap: None,
        limits: Limits::default(),
    })
}

fn summary(label: &str, r: &BatchReport) {
    println!(
        "{label}: {} trials, {} converged ({} re-checked as equilibria), {} cycles, median steps {:?}",
        r.trials,
        r.converged,
        r.converged - r.unverified,
        r.cycles,
        r.steps.as_ref().map(|s| s.median)
    );
}

fn main() -> pivot_vote::Result<()> {
    let n = 5;
    let prefs = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [2, 0, 1], [1, 2, 0]]
        .iter()
        .map(|o| PreferenceOrder::strict(o))
        .collect::<pivot_vote::Result<Vec<_>>>()?;
    let model = EpistemicModel::DistanceBased {
        metric: Metric::linf(n),
        radii: vec![Radius::votes(1, n), Radius::votes(2, n)],
    };
    let game = Game::new(VotingRule::plurality(3), prefs, vec![model; n as usize])?;
    let initial = vec![Ballot::single(3, 2); n as usize];
    let t = run(&game, &initial, &Scheduler::RoundRobin, &MovePolicy::BestUod, None)?;
    for mv in &t.moves {
        println!(
            "step {}: voter {} moves {:?} -> {:?}, tally {:?}",
            mv.step,
            mv.voter,
            mv.old.scores(),
            mv.new.scores(),
            mv.aggregate.scores()
        );
    }
    println!("{:?}, equilibrium re-check {:?}", t.status, t.verified);

    let linf = ModelFamily::LInf { max_radius: 2, max_levels: 3 };
    summary("plurality best-uod", &batch(RuleKind::Plurality, linf.clone(), MovePolicy::BestUod)?);
    summary("veto best-uod", &batch(RuleKind::Veto, linf, MovePolicy::BestUod)?);
    let control = batch(RuleKind::Borda, ModelFamily::FullInformation, MovePolicy::BestUod)?;
    summary("borda full information", &control);
    if let Some((trial, t)) = control.cycle_witnesses.first() {
        if let Status::Cycle { period, first_repeat } = t.status {
            println!(
                "  trial {} repeats after {period} moves from move {first_repeat}, {} voters",
                trial.index,
                trial.game.n()
            );
        }
    }
    Ok(())
}
