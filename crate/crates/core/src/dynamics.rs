//! Iterative voting: schedulers, move policies, trajectories with cycle
//! detection, exhaustive adversarial exploration and seeded batches.

use std::collections::HashMap;
use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dominance::{
    aggregate, is_od_equilibrium, DominanceMode, DominanceOracle, EquilibriumReport,
};
use crate::election::{
    allowed_ballots_capped, outcome_raw, truthful_ballot, Ballot, PreferenceOrder, RuleKind,
    ScoreVector, VotingRule,
};
use crate::epistemic::{derive_structure, is_cliqued, EpistemicModel, VoterContext};
use crate::error::{Error, Result};
use crate::heuristics::{evaluate_heuristic, HeuristicKind};
use crate::metrics::{Metric, MetricKind, Radius};
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Scheduler {
    RoundRobin,
    RandomSeeded { seed: u64 },
    /// Every activation order (and, for `AnyOd`, every dominating ballot)
    /// up to `depth` moves.
    ExhaustiveAdversarial { depth: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MovePolicy {
    /// The UOD member whose winner at the live state is best, then the
    /// lowest menu index.
    #[default]
    BestUod,
    /// The first OD member in menu order.
    AnyOd,
    Heuristic { heuristic: HeuristicKind },
}

/// Voters, their beliefs and how dominance is judged.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Game {
    pub rule: VotingRule,
    pub prefs: Vec<PreferenceOrder>,
    pub models: Vec<EpistemicModel>,
    #[serde(default)]
    pub mode: DominanceMode,
    #[serde(default)]
    pub limits: Limits,
}

fn model_levels(model: &EpistemicModel) -> usize {
    match model {
        EpistemicModel::DistanceBased { radii, .. } => radii.len(),
        EpistemicModel::FullInformation => 1,
        EpistemicModel::Heuristic { heuristic } => match heuristic {
            HeuristicKind::TruthBiasLd { .. }
            | HeuristicKind::LazyBiasLd { .. }
            | HeuristicKind::LeaderRule => 2,
            _ => 1,
        },
    }
}

impl Game {
    pub fn new(rule: VotingRule, prefs: Vec<PreferenceOrder>, models: Vec<EpistemicModel>) -> Result<Self> {
        if prefs.len() != models.len() {
            return Err(Error::structural("one model per voter is required"));
        }
        if prefs.iter().any(|p| p.m() != rule.m) {
            return Err(Error::structural("preferences disagree with the rule on m"));
        }
        Ok(Game {
            rule,
            prefs,
            models,
            mode: DominanceMode::Auto,
            limits: Limits::default(),
        })
    }

    pub fn n(&self) -> usize {
        self.prefs.len()
    }

    /// `10 · n · m · k`, with `k` the deepest model.
    pub fn default_step_cap(&self) -> usize {
        let k = self.models.iter().map(model_levels).max().unwrap_or(1);
        10 * self.n() * self.rule.m * k
    }

    fn context(&self, profile: &[Ballot], total: &ScoreVector, i: usize) -> Result<VoterContext> {
        VoterContext::from_poll(total, profile[i].clone(), self.prefs[i].clone(), self.rule)
    }

    /// Every ballot voter `i` may move to. Policies other than `AnyOd`
    /// yield at most one.
    pub fn moves(
        &self,
        policy: &MovePolicy,
        profile: &[Ballot],
        total: &ScoreVector,
        i: usize,
        all_od: bool,
    ) -> Result<Vec<Ballot>> {
        let ctx = self.context(profile, total, i)?;
        let chosen = match policy {
            MovePolicy::Heuristic { heuristic } => {
                let mut ctx = ctx.clone();
                ctx.prefs = ctx.prefs.with_bias(heuristic.bias());
                let mut out = evaluate_heuristic(heuristic, &ctx, &self.limits)?;
                out.retain(|a| *a != ctx.current);
                out.sort();
                out.truncate(1);
                out
            }
            MovePolicy::AnyOd => {
                let oracle = DominanceOracle::new(&ctx, &self.models[i], self.mode, &self.limits)?;
                let mut od = oracle.od_set();
                if !all_od {
                    od.truncate(1);
                }
                od
            }
            MovePolicy::BestUod => {
                let oracle = DominanceOracle::new(&ctx, &self.models[i], self.mode, &self.limits)?;
                let uod = oracle.uod_indices();
                let menu = oracle.menu();
                let best = uod.iter().map(|&(x, _)| x).min_by(|&x, &y| {
                    let wx = outcome_raw(ctx.state.scores(), menu[x].scores());
                    let wy = outcome_raw(ctx.state.scores(), menu[y].scores());
                    ctx.prefs.cmp_candidates(wy, wx).then(x.cmp(&y))
                });
                best.map(|x| vec![menu[x].clone()]).unwrap_or_default()
            }
        };
        Ok(chosen)
    }

    /// Whether every voter's structure at `profile` is cliqued.
    pub fn cliqued_at(&self, profile: &[Ballot]) -> Result<bool> {
        let total = aggregate(profile, self.rule.m)?;
        for i in 0..self.n() {
            let ctx = self.context(profile, &total, i)?;
            if !is_cliqued(&derive_structure(&self.models[i], &ctx, &self.limits)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equilibrium(&self, profile: &[Ballot]) -> Result<EquilibriumReport> {
        is_od_equilibrium(profile, &self.prefs, &self.models, &self.rule, self.mode, &self.limits)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub step: usize,
    pub voter: usize,
    pub old: Ballot,
    pub new: Ballot,
    pub aggregate: ScoreVector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Status {
    Converged { steps: usize },
    /// The state after move `first_repeat` recurs `period` moves later.
    Cycle { period: usize, first_repeat: usize },
    Truncated { cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trajectory {
    pub initial: Vec<Ballot>,
    pub moves: Vec<Move>,
    pub status: Status,
    /// Independent equilibrium check of the terminal profile, when converged.
    pub verified: Option<bool>,
}

impl Trajectory {
    /// The profiles on the detected cycle, empty unless the status is a cycle.
    pub fn cycle_states(&self) -> Vec<Vec<Ballot>> {
        let Status::Cycle { first_repeat, .. } = self.status else {
            return Vec::new();
        };
        let mut profile = self.initial.clone();
        let mut out = Vec::new();
        for (k, mv) in self.moves.iter().enumerate() {
            if k >= first_repeat {
                out.push(profile.clone());
            }
            profile[mv.voter] = mv.new.clone();
        }
        out
    }

    pub fn terminal(&self) -> Vec<Ballot> {
        let mut profile = self.initial.clone();
        for mv in &self.moves {
            profile[mv.voter] = mv.new.clone();
        }
        profile
    }
}

/// Activation state of a sequential scheduler.
enum Activation {
    RoundRobin { next: usize },
    Random { rng: Box<ChaCha8Rng> },
}

impl Activation {
    fn new(scheduler: &Scheduler) -> Result<Self> {
        match scheduler {
            Scheduler::RoundRobin => Ok(Activation::RoundRobin { next: 0 }),
            Scheduler::RandomSeeded { seed } => Ok(Activation::Random {
                rng: Box::new(ChaCha8Rng::seed_from_u64(*seed)),
            }),
            Scheduler::ExhaustiveAdversarial { .. } => Err(Error::config(
                "exhaustive scheduling explores a move graph; use explore_all",
            )),
        }
    }

    fn order(&mut self, n: usize) -> Vec<usize> {
        match self {
            Activation::RoundRobin { next } => (0..n).map(|o| (*next + o) % n).collect(),
            Activation::Random { rng } => {
                let mut v: Vec<usize> = (0..n).collect();
                v.shuffle(rng.as_mut());
                v
            }
        }
    }

    fn moved(&mut self, voter: usize, n: usize) {
        if let Activation::RoundRobin { next } = self {
            *next = (voter + 1) % n;
        }
    }

    /// Part of the state that makes the future deterministic.
    fn key(&self) -> Option<usize> {
        match self {
            Activation::RoundRobin { next } => Some(*next),
            Activation::Random { .. } => None,
        }
    }
}

/// One move: the first activated voter with a policy move switches.
pub fn step(
    game: &Game,
    profile: &mut [Ballot],
    scheduler: &Scheduler,
    policy: &MovePolicy,
) -> Result<Option<(usize, Ballot)>> {
    let mut act = Activation::new(scheduler)?;
    step_with(game, profile, &mut act, policy)
}

fn step_with(
    game: &Game,
    profile: &mut [Ballot],
    act: &mut Activation,
    policy: &MovePolicy,
) -> Result<Option<(usize, Ballot)>> {
    let n = game.n();
    let total = aggregate(profile, game.rule.m)?;
    for i in act.order(n) {
        if let Some(a) = game.moves(policy, profile, &total, i, false)?.into_iter().next() {
            let old = std::mem::replace(&mut profile[i], a);
            act.moved(i, n);
            return Ok(Some((i, old)));
        }
    }
    Ok(None)
}

/// Runs to convergence, a revisited state, or the step cap.
///
/// Round-robin detects a cycle when (profile, pointer) repeats. The random
/// scheduler has no finite state, so any revisited profile counts: the moves
/// in between form an improvement cycle.
pub fn run(
    game: &Game,
    initial: &[Ballot],
    scheduler: &Scheduler,
    policy: &MovePolicy,
    step_cap: Option<usize>,
) -> Result<Trajectory> {
    if initial.len() != game.n() {
        return Err(Error::structural("profile and voters differ in length"));
    }
    for a in initial {
        game.rule
            .check_ballot(a, true)
            .map_err(|_| Error::RuleViolation {
                rule: game.rule.to_string(),
                ballot: a.scores().to_vec(),
            })?;
    }
    let cap = step_cap.unwrap_or_else(|| game.default_step_cap()).max(1);
    let mut act = Activation::new(scheduler)?;
    let mut profile = initial.to_vec();
    let mut seen: HashMap<(Vec<Ballot>, Option<usize>), usize> = HashMap::new();
    seen.insert((profile.clone(), act.key()), 0);
    let mut moves = Vec::new();
    loop {
        if moves.len() >= cap {
            return Ok(Trajectory {
                initial: initial.to_vec(),
                moves,
                status: Status::Truncated { cap },
                verified: None,
            });
        }
        match step_with(game, &mut profile, &mut act, policy)? {
            None => {
                let verified = game.equilibrium(&profile)?.is_equilibrium;
                return Ok(Trajectory {
                    initial: initial.to_vec(),
                    status: Status::Converged { steps: moves.len() },
                    moves,
                    verified: Some(verified),
                });
            }
            Some((voter, old)) => {
                let aggregate = aggregate(&profile, game.rule.m)?;
                moves.push(Move {
                    step: moves.len() + 1,
                    voter,
                    old,
                    new: profile[voter].clone(),
                    aggregate,
                });
                let now = moves.len();
                if let Some(&first) = seen.get(&(profile.clone(), act.key())) {
                    return Ok(Trajectory {
                        initial: initial.to_vec(),
                        moves,
                        status: Status::Cycle {
                            period: now - first,
                            first_repeat: first,
                        },
                        verified: None,
                    });
                }
                seen.insert((profile.clone(), act.key()), now);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exploration {
    pub profiles: usize,
    /// Profiles along a cycle, first repeated at the end.
    pub cycle: Option<Vec<Vec<Ballot>>>,
    /// Some branch was cut at the depth bound.
    pub truncated: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Color {
    Open,
    Done,
}

/// Depth-first search of the move graph from every root: any voter may be
/// activated, and under `AnyOd` any dominating ballot may be chosen.
pub fn explore_all(
    game: &Game,
    roots: &[Vec<Ballot>],
    policy: &MovePolicy,
    depth: usize,
) -> Result<Exploration> {
    let all_od = matches!(policy, MovePolicy::AnyOd);
    let successors = |profile: &[Ballot]| -> Result<Vec<Vec<Ballot>>> {
        let total = aggregate(profile, game.rule.m)?;
        let mut out = Vec::new();
        for i in 0..game.n() {
            for a in game.moves(policy, profile, &total, i, all_od)? {
                let mut next = profile.to_vec();
                next[i] = a;
                out.push(next);
            }
        }
        Ok(out)
    };
    let mut color: HashMap<Vec<Ballot>, Color> = HashMap::new();
    let mut truncated = false;
    for root in roots {
        if color.contains_key(root) {
            continue;
        }
        // (profile, successors, next successor index)
        let mut stack: Vec<(Vec<Ballot>, Vec<Vec<Ballot>>, usize)> = Vec::new();
        color.insert(root.clone(), Color::Open);
        stack.push((root.clone(), successors(root)?, 0));
        while let Some(top) = stack.last_mut() {
            if top.2 == top.1.len() {
                let (p, _, _) = stack.pop().expect("non-empty");
                color.insert(p, Color::Done);
                continue;
            }
            let next = top.1[top.2].clone();
            top.2 += 1;
            match color.get(&next) {
                Some(Color::Done) => {}
                Some(Color::Open) => {
                    let start = stack.iter().position(|(p, _, _)| *p == next).expect("open is on the stack");
                    let mut cycle: Vec<Vec<Ballot>> = stack[start..].iter().map(|(p, _, _)| p.clone()).collect();
                    cycle.push(next);
                    return Ok(Exploration {
                        profiles: color.len(),
                        cycle: Some(cycle),
                        truncated,
                    });
                }
                None => {
                    if stack.len() > depth {
                        truncated = true;
                        continue;
                    }
                    color.insert(next.clone(), Color::Open);
                    let succ = successors(&next)?;
                    stack.push((next, succ, 0));
                }
            }
        }
    }
    Ok(Exploration {
        profiles: color.len(),
        cycle: None,
        truncated,
    })
}

/// How each voter's beliefs are drawn in a batch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ModelFamily {
    FullInformation,
    /// Concentric ℓ∞ balls, radii drawn per voter.
    LInf { max_radius: u64, max_levels: usize },
    /// Concentric weighted candidate-wise balls, weights drawn per trial.
    CandidateWise { max_radius: u64, max_weight: u32, max_levels: usize },
    /// Concentric EMD balls, radii drawn per voter.
    Emd { max_radius: u64, max_levels: usize },
    Heuristic { heuristic: HeuristicKind },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchedulerFamily {
    RoundRobin,
    Random,
    /// Round robin or random, drawn per trial.
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchConfig {
    pub rule: RuleKind,
    pub m: (usize, usize),
    pub n: (usize, usize),
    pub models: ModelFamily,
    pub schedulers: SchedulerFamily,
    pub policy: MovePolicy,
    pub trials: usize,
    pub seed: u64,
    #[serde(default)]
    pub truthful_start: bool,
    #[serde(default)]
    pub mode: DominanceMode,
    #[serde(default)]
    pub step_cap: Option<usize>,
    #[serde(default)]
    pub limits: Limits,
}

/// One generated instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trial {
    pub index: usize,
    pub game: Game,
    pub initial: Vec<Ballot>,
    pub scheduler: Scheduler,
}

fn draw_radii(rng: &mut ChaCha8Rng, max_radius: u64, max_levels: usize, scale: u64) -> Vec<Radius> {
    let k = rng.random_range(1..=max_levels.max(1));
    let mut r: Vec<u64> = (0..k).map(|_| rng.random_range(0..=max_radius)).collect();
    r.sort_unstable();
    r.dedup();
    r.into_iter().map(|v| Radius::votes(v, scale)).collect()
}

fn draw_model(family: &ModelFamily, rng: &mut ChaCha8Rng, weights: &[u32], n: u64) -> EpistemicModel {
    match family {
        ModelFamily::FullInformation => EpistemicModel::FullInformation,
        ModelFamily::LInf { max_radius, max_levels } => EpistemicModel::DistanceBased {
            metric: Metric::linf(n),
            radii: draw_radii(rng, *max_radius, *max_levels, n),
        },
        ModelFamily::CandidateWise { max_radius, max_levels, .. } => EpistemicModel::DistanceBased {
            metric: Metric::new(
                MetricKind::CandidateWise {
                    weights: weights.to_vec(),
                },
                n,
            ),
            radii: draw_radii(rng, *max_radius, *max_levels, n),
        },
        ModelFamily::Emd { max_radius, max_levels } => EpistemicModel::DistanceBased {
            metric: Metric::emd(n),
            radii: draw_radii(rng, *max_radius, *max_levels, n),
        },
        ModelFamily::Heuristic { heuristic } => EpistemicModel::Heuristic {
            heuristic: heuristic.clone(),
        },
    }
}

/// Seeded generator of the `index`-th trial: impartial-culture
/// preferences, uniform (or truthful) initial ballots.
pub fn generate_trial(config: &BatchConfig, index: usize) -> Result<Trial> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index as u64);
    let m = rng.random_range(config.m.0..=config.m.1);
    let n = rng.random_range(config.n.0..=config.n.1);
    let rule = VotingRule::new(config.rule, m)?;
    let ballots = allowed_ballots_capped(&rule, &config.limits.ballots)?;
    let weights: Vec<u32> = match &config.models {
        ModelFamily::CandidateWise { max_weight, .. } => {
            (0..m).map(|_| rng.random_range(1..=(*max_weight).max(1))).collect()
        }
        _ => Vec::new(),
    };
    let mut prefs = Vec::with_capacity(n);
    let mut models = Vec::with_capacity(n);
    let mut initial = Vec::with_capacity(n);
    for _ in 0..n {
        let mut order: Vec<usize> = (0..m).collect();
        order.shuffle(&mut rng);
        let p = PreferenceOrder::strict(&order)?;
        models.push(draw_model(&config.models, &mut rng, &weights, n as u64));
        let a = if config.truthful_start {
            truthful_ballot(&rule, &p, Some(1))?
        } else {
            ballots[rng.random_range(0..ballots.len())].clone()
        };
        prefs.push(p);
        initial.push(a);
    }
    let scheduler = match config.schedulers {
        SchedulerFamily::RoundRobin => Scheduler::RoundRobin,
        SchedulerFamily::Random => Scheduler::RandomSeeded { seed: rng.random() },
        SchedulerFamily::Mixed => {
            if rng.random_bool(0.5) {
                Scheduler::RoundRobin
            } else {
                Scheduler::RandomSeeded { seed: rng.random() }
            }
        }
    };
    let mut game = Game::new(rule, prefs, models)?;
    game.mode = config.mode;
    game.limits = config.limits;
    Ok(Trial {
        index,
        game,
        initial,
        scheduler,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepStats {
    pub min: usize,
    pub median: usize,
    pub max: usize,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchReport {
    pub trials: usize,
    pub converged: usize,
    pub cycles: usize,
    pub truncated: usize,
    pub errors: usize,
    /// Converged runs whose terminal profile failed the equilibrium re-check.
    pub unverified: usize,
    pub convergence_rate: Option<f64>,
    pub steps: Option<StepStats>,
    pub cycle_witnesses: Vec<(Trial, Trajectory)>,
    /// Indices of every trial that cycled.
    pub cycle_trials: Vec<usize>,
    pub error_messages: Vec<String>,
}

/// How many cycle witnesses a batch report keeps.
const MAX_WITNESSES: usize = 4;

pub fn batch_verify(config: &BatchConfig) -> Result<BatchReport> {
    let outcomes: Vec<(Trial, Result<Trajectory>)> = (0..config.trials)
        .into_par_iter()
        .map(|i| {
            let trial = generate_trial(config, i)?;
            let traj = run(&trial.game, &trial.initial, &trial.scheduler, &config.policy, config.step_cap);
            Ok((trial, traj))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = BatchReport {
        trials: config.trials,
        converged: 0,
        cycles: 0,
        truncated: 0,
        errors: 0,
        unverified: 0,
        convergence_rate: None,
        steps: None,
        cycle_witnesses: Vec::new(),
        cycle_trials: Vec::new(),
        error_messages: Vec::new(),
    };
    let mut steps = Vec::new();
    for (trial, traj) in outcomes {
        match traj {
            Err(e) => {
                report.errors += 1;
                if report.error_messages.len() < MAX_WITNESSES {
                    report.error_messages.push(format!("trial {}: {e}", trial.index));
                }
            }
            Ok(t) => match t.status {
                Status::Converged { steps: s } => {
                    report.converged += 1;
                    report.unverified += (t.verified != Some(true)) as usize;
                    steps.push(s);
                }
                Status::Cycle { .. } => {
                    report.cycles += 1;
                    report.cycle_trials.push(trial.index);
                    if report.cycle_witnesses.len() < MAX_WITNESSES {
                        report.cycle_witnesses.push((trial, t));
                    }
                }
                Status::Truncated { .. } => report.truncated += 1,
            },
        }
    }
    if config.trials > 0 {
        report.convergence_rate = Some(report.converged as f64 / config.trials as f64);
    }
    if !steps.is_empty() {
        steps.sort_unstable();
        report.steps = Some(StepStats {
            min: steps[0],
            median: steps[steps.len() / 2],
            max: steps[steps.len() - 1],
            total: steps.iter().sum(),
        });
    }
    Ok(report)
}

/// Every profile of `n` ballots drawn from `ballots`.
pub fn all_profiles(ballots: &[Ballot], n: usize) -> Vec<Vec<Ballot>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                ballots.iter().map(move |a| {
                    let mut q = p.clone();
                    q.push(a.clone());
                    q
                })
            })
            .collect();
    }
    out
}

/// Distinct profiles visited by a trajectory, in order.
pub fn visited(t: &Trajectory) -> Vec<Vec<Ballot>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut p = t.initial.clone();
    if seen.insert(p.clone()) {
        out.push(p.clone());
    }
    for mv in &t.moves {
        p[mv.voter] = mv.new.clone();
        if seen.insert(p.clone()) {
            out.push(p.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plurality_game(prefs: &[&[usize]], model: EpistemicModel) -> Game {
        let m = prefs[0].len();
        Game::new(
            VotingRule::plurality(m),
            prefs.iter().map(|o| PreferenceOrder::strict(o).unwrap()).collect(),
            vec![model; prefs.len()],
        )
        .unwrap()
    }

    #[test]
    fn equilibrium_start_converges_in_zero_steps() {
        let g = plurality_game(&[&[0, 1, 2], &[0, 1, 2], &[0, 1, 2]], EpistemicModel::FullInformation);
        let init = vec![Ballot::single(3, 0); 3];
        let t = run(&g, &init, &Scheduler::RoundRobin, &MovePolicy::BestUod, None).unwrap();
        assert_eq!(t.status, Status::Converged { steps: 0 });
        assert_eq!(t.verified, Some(true));
    }

    #[test]
    fn not_last_voter_leaves_the_bottom() {
        let g = plurality_game(
            &[&[0, 1, 2]],
            EpistemicModel::Heuristic {
                heuristic: HeuristicKind::NotLast,
            },
        );
        let mut profile = vec![Ballot::single(3, 2)];
        let mv = step(&g, &mut profile, &Scheduler::RoundRobin, &MovePolicy::BestUod).unwrap();
        assert_eq!(mv, Some((0, Ballot::single(3, 2))));
        assert_eq!(profile, vec![Ballot::single(3, 0)]);
    }

    #[test]
    fn full_information_step_is_a_best_response() {
        // two voters each for 0 and 1; the last voter prefers 1 > 2 > 0
        let g = plurality_game(
            &[&[0, 1, 2], &[0, 1, 2], &[1, 0, 2], &[1, 0, 2], &[1, 2, 0]],
            EpistemicModel::FullInformation,
        );
        let mut profile = vec![
            Ballot::single(3, 0),
            Ballot::single(3, 0),
            Ballot::single(3, 1),
            Ballot::single(3, 1),
            Ballot::single(3, 2),
        ];
        let mv = step(&g, &mut profile, &Scheduler::RoundRobin, &MovePolicy::BestUod).unwrap();
        assert_eq!(mv.map(|x| x.0), Some(4));
        assert_eq!(profile[4], Ballot::single(3, 1));
    }

    #[test]
    fn runs_are_reproducible() {
        let cfg = BatchConfig {
            rule: RuleKind::Plurality,
            m: (3, 4),
            n: (3, 6),
            models: ModelFamily::LInf {
                max_radius: 2,
                max_levels: 2,
            },
            schedulers: SchedulerFamily::Mixed,
            policy: MovePolicy::BestUod,
            trials: 8,
            seed: 7,
            truthful_start: false,
            mode: DominanceMode::Auto,
            step_cap: None,
            limits: Limits::default(),
        };
        let a = batch_verify(&cfg).unwrap();
        let b = batch_verify(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.converged, 8);
        assert_eq!(generate_trial(&cfg, 3).unwrap(), generate_trial(&cfg, 3).unwrap());
        let empty = batch_verify(&BatchConfig { trials: 0, ..cfg }).unwrap();
        assert_eq!(empty.convergence_rate, None);
    }

    #[test]
    fn exhaustive_search_separates_the_policies() {
        let g = plurality_game(&[&[0, 1, 2], &[1, 2, 0], &[2, 0, 1]], EpistemicModel::FullInformation);
        let roots = all_profiles(&allowed_ballots_capped(&g.rule, &g.limits.ballots).unwrap(), 3);
        let best = explore_all(&g, &roots, &MovePolicy::BestUod, 64).unwrap();
        assert_eq!(best.profiles, 27);
        assert!(best.cycle.is_none() && !best.truncated);
        // better responses may cycle: 1,1,0 -> 2,1,0 -> 2,2,0 -> 1,2,0 -> 1,1,0
        let any = explore_all(&g, &roots, &MovePolicy::AnyOd, 64).unwrap();
        let cycle = any.cycle.expect("a better-response cycle");
        let singles: Vec<Vec<usize>> = cycle
            .iter()
            .map(|p| p.iter().map(|a| a.as_single().unwrap()).collect())
            .collect();
        assert_eq!(singles, vec![vec![1, 1, 0], vec![2, 1, 0], vec![2, 2, 0], vec![1, 2, 0], vec![1, 1, 0]]);
    }
}
