//! Voting heuristics as set-valued move rules, the pivot-graph structures
//! that justify them, and the justification checker.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dominance::{DominanceMode, DominanceOracle};
use crate::election::{
    outcome_raw, truthful_ballot, Ballot, Bias, Candidate, PreferenceOrder, RuleKind, ScoreVector,
    VotingRule,
};
use crate::epistemic::{pivot_graph, EpistemicModel, VoterContext};
use crate::error::{Error, Result};
use crate::graph::{PivotGraph, PivotGraphStructure};
use crate::metrics::{ball_capped, Metric, Radius};
use crate::Limits;

/// How many counterexamples a justification report keeps verbatim.
const MAX_COUNTEREXAMPLES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum HeuristicKind {
    NotLast,
    LocalDominance { metric: Metric, r: Radius },
    TruthBiasLd { metric: Metric, r1: Radius, r2: Radius },
    LazyBiasLd { metric: Metric, r1: Radius, r2: Radius },
    TPragmatist { t: usize },
    TStar { t: usize },
    LeaderRule,
}

impl HeuristicKind {
    pub fn name(&self) -> &'static str {
        match self {
            HeuristicKind::NotLast => "not-last",
            HeuristicKind::LocalDominance { .. } => "local-dominance",
            HeuristicKind::TruthBiasLd { .. } => "truth-bias-ld",
            HeuristicKind::LazyBiasLd { .. } => "lazy-bias-ld",
            HeuristicKind::TPragmatist { .. } => "t-pragmatist",
            HeuristicKind::TStar { .. } => "t-star",
            HeuristicKind::LeaderRule => "leader-rule",
        }
    }

    /// The tie-breaking bias the heuristic presumes.
    pub fn bias(&self) -> Bias {
        match self {
            HeuristicKind::TruthBiasLd { .. } => Bias::Truth,
            HeuristicKind::LazyBiasLd { .. } => Bias::Lazy,
            _ => Bias::None,
        }
    }

    /// At most one ballot is ever returned.
    pub fn is_point(&self) -> bool {
        !matches!(self, HeuristicKind::NotLast)
    }

    pub fn validate(&self, rule: &VotingRule) -> Result<()> {
        let m = rule.m;
        let plurality_only = |name: &str| {
            if rule.kind == RuleKind::Plurality {
                Ok(())
            } else {
                Err(Error::config(format!("{name} is defined for plurality only")))
            }
        };
        match self {
            HeuristicKind::NotLast | HeuristicKind::LocalDominance { .. } => plurality_only(self.name()),
            HeuristicKind::TruthBiasLd { r1, r2, .. } | HeuristicKind::LazyBiasLd { r1, r2, .. } => {
                if r1.vote_units >= r2.vote_units {
                    return Err(Error::config("r1 must be smaller than r2"));
                }
                plurality_only(self.name())
            }
            HeuristicKind::TPragmatist { t } | HeuristicKind::TStar { t } => {
                if *t == 0 || *t > m {
                    return Err(Error::config(format!("T = {t} outside 1..={m}")));
                }
                Ok(())
            }
            HeuristicKind::LeaderRule => {
                if rule.kind == RuleKind::Approval {
                    Ok(())
                } else {
                    Err(Error::config("the leader rule needs approval voting"))
                }
            }
        }
    }
}

fn strip_bias(prefs: &PreferenceOrder) -> PreferenceOrder {
    prefs.clone().with_bias(Bias::None)
}

/// Candidates `d` whose plurality ballot set-dominates the current ballot
/// on the ball around the state.
fn dominating_candidates(
    ctx: &VoterContext,
    metric: &Metric,
    r: Radius,
    limits: &Limits,
) -> Result<Vec<Candidate>> {
    let states = ball_capped(metric, &ctx.state, r, limits.ball_cap)?;
    let prefs = strip_bias(&ctx.prefs);
    let m = ctx.rule.m;
    Ok((0..m)
        .filter(|&d| {
            let a = Ballot::single(m, d);
            let (mut better, mut worse) = (false, false);
            for s in &states {
                let wd = outcome_raw(s.scores(), a.scores());
                let wc = outcome_raw(s.scores(), ctx.current.scores());
                match prefs.cmp_candidates(wd, wc) {
                    Ordering::Greater => better = true,
                    Ordering::Less => worse = true,
                    Ordering::Equal => {}
                }
            }
            better && !worse
        })
        .collect())
}

fn local_dominance_move(
    ctx: &VoterContext,
    metric: &Metric,
    r: Radius,
    limits: &Limits,
) -> Result<Option<Ballot>> {
    let d = dominating_candidates(ctx, metric, r, limits)?;
    Ok(ctx
        .prefs
        .favorite_in(d)
        .map(|c| Ballot::single(ctx.rule.m, c)))
}

fn biased_ld(
    ctx: &VoterContext,
    metric: &Metric,
    r1: Radius,
    r2: Radius,
    target: Ballot,
    limits: &Limits,
) -> Result<Vec<Ballot>> {
    if let Some(a) = local_dominance_move(ctx, metric, r1, limits)? {
        return Ok(vec![a]);
    }
    if target == ctx.current {
        return Ok(vec![]);
    }
    let states = ball_capped(metric, &ctx.state, r2, limits.ball_cap)?;
    let keep = states.iter().any(|s| {
        let wc = outcome_raw(s.scores(), ctx.current.scores());
        let wt = outcome_raw(s.scores(), target.scores());
        ctx.prefs.prefers(wc, wt)
    });
    Ok(if keep { vec![] } else { vec![target] })
}

/// The `t` highest-scoring candidates, ties to the lower index.
pub fn score_leaders(s: &ScoreVector, t: usize) -> Vec<Candidate> {
    let mut order = s.score_order();
    order.truncate(t);
    order
}

/// The voter's favorite among the `t` score leaders.
fn leader_favorite(ctx: &VoterContext, t: usize) -> Result<(Candidate, Vec<Candidate>)> {
    let leaders = score_leaders(&ctx.state, t);
    let fav = ctx
        .prefs
        .favorite_in(leaders.iter().copied())
        .ok_or_else(|| Error::Ambiguity("no unique favorite among the leaders".into()))?;
    Ok((fav, leaders))
}

/// Re-deals the current ballot's scores so that `front` gets the highest
/// and `back` the lowest, in the current relative order.
fn redeal(ctx: &VoterContext, front: Candidate, back: &[Candidate]) -> Ballot {
    let cur = ctx.current.scores();
    let m = cur.len();
    if ctx.rule.kind == RuleKind::Approval {
        let mut v = cur.to_vec();
        v[front] = 1;
        for &c in back {
            v[c] = 0;
        }
        return Ballot::new(v);
    }
    let ranks = ctx.prefs.ranks();
    let mut order: Vec<Candidate> = (0..m).collect();
    order.sort_by(|&a, &b| cur[b].cmp(&cur[a]).then(ranks[a].cmp(&ranks[b])).then(a.cmp(&b)));
    let tail: Vec<Candidate> = order.iter().copied().filter(|c| back.contains(c)).collect();
    let mut seq = vec![front];
    seq.extend(order.iter().copied().filter(|&c| c != front && !back.contains(&c)));
    seq.extend(tail);
    let mut scores = cur.to_vec();
    scores.sort_unstable_by(|a, b| b.cmp(a));
    let mut v = vec![0; m];
    for (c, s) in seq.into_iter().zip(scores) {
        v[c] = s;
    }
    Ballot::new(v)
}

/// The ballot the leader rule prescribes.
pub fn leader_rule_ballot(state: &ScoreVector, prefs: &PreferenceOrder) -> Ballot {
    let order = state.score_order();
    let (c1, c2) = (order[0], order[1]);
    let v = (0..state.len())
        .map(|c| (prefs.prefers(c, c1) || (c == c1 && prefs.prefers(c1, c2))) as u32)
        .collect();
    Ballot::new(v)
}

fn check_context(kind: &HeuristicKind, ctx: &VoterContext) -> Result<()> {
    kind.validate(&ctx.rule)?;
    if ctx.prefs.m() != ctx.rule.m || ctx.state.len() != ctx.rule.m {
        return Err(Error::structural("context components disagree on m"));
    }
    Ok(())
}

/// The set of ballots the heuristic would move to; empty means stay.
pub fn evaluate_heuristic(kind: &HeuristicKind, ctx: &VoterContext, limits: &Limits) -> Result<Vec<Ballot>> {
    check_context(kind, ctx)?;
    let m = ctx.rule.m;
    match kind {
        HeuristicKind::NotLast => {
            let last = ctx
                .prefs
                .bottom()
                .ok_or_else(|| Error::Ambiguity("no unique least preferred candidate".into()))?;
            if ctx.current.as_single() != Some(last) {
                return Ok(vec![]);
            }
            Ok((0..m).filter(|&c| c != last).map(|c| Ballot::single(m, c)).collect())
        }
        HeuristicKind::LocalDominance { metric, r } => {
            Ok(local_dominance_move(ctx, metric, *r, limits)?.into_iter().collect())
        }
        HeuristicKind::TruthBiasLd { metric, r1, r2 } => {
            let q = truthful_ballot(&ctx.rule, &ctx.prefs, None)?;
            biased_ld(ctx, metric, *r1, *r2, q, limits)
        }
        HeuristicKind::LazyBiasLd { metric, r1, r2 } => {
            biased_ld(ctx, metric, *r1, *r2, Ballot::abstain(m), limits)
        }
        HeuristicKind::TPragmatist { t } => {
            let (fav, _) = leader_favorite(ctx, *t)?;
            Ok(vec![redeal(ctx, fav, &[])])
        }
        HeuristicKind::TStar { t } => {
            let (fav, leaders) = leader_favorite(ctx, *t)?;
            let others: Vec<Candidate> = leaders.into_iter().filter(|&c| c != fav).collect();
            let a = redeal(ctx, fav, &others);
            Ok(if a == ctx.current { vec![] } else { vec![a] })
        }
        HeuristicKind::LeaderRule => Ok(vec![leader_rule_ballot(&ctx.state, &ctx.prefs)]),
    }
}

/// Edges of `g` between the current vote and candidates it beats.
fn edges_below_current(g: &PivotGraph, ctx: &VoterContext) -> PivotGraph {
    let mut out = PivotGraph::empty(g.m());
    if let Some(cur) = ctx.current.as_single() {
        for (a, b) in g.edges() {
            let other = if a == cur {
                b
            } else if b == cur {
                a
            } else {
                continue;
            };
            if ctx.prefs.prefers(cur, other) {
                out.add_edge(a, b);
            }
        }
    }
    out
}

/// The closed-form pivot-graph structure accompanying a heuristic.
pub fn build_model(kind: &HeuristicKind, ctx: &VoterContext, limits: &Limits) -> Result<PivotGraphStructure> {
    check_context(kind, ctx)?;
    let m = ctx.rule.m;
    let ball_graph = |metric: &Metric, r: Radius| -> Result<PivotGraph> {
        pivot_graph(&ball_capped(metric, &ctx.state, r, limits.ball_cap)?, &ctx.rule, limits)
    };
    match kind {
        HeuristicKind::NotLast => Ok(PivotGraphStructure::single(PivotGraph::complete(m))),
        HeuristicKind::LocalDominance { metric, r } => Ok(PivotGraphStructure::single(ball_graph(metric, *r)?)),
        HeuristicKind::TruthBiasLd { metric, r1, r2 } | HeuristicKind::LazyBiasLd { metric, r1, r2 } => {
            let h1 = ball_graph(metric, *r1)?;
            let h2 = edges_below_current(&ball_graph(metric, *r2)?, ctx);
            let outer = h1.union(&h2);
            PivotGraphStructure::new(vec![h1, outer])
        }
        HeuristicKind::TPragmatist { t } | HeuristicKind::TStar { t } => {
            let (fav, leaders) = leader_favorite(ctx, *t)?;
            Ok(PivotGraphStructure::single(PivotGraph::star(m, fav, leaders)))
        }
        HeuristicKind::LeaderRule => {
            let order = ctx.state.score_order();
            let inner = PivotGraph::star(m, order[0], [order[1]]);
            let outer = PivotGraph::star(m, order[0], 0..m);
            PivotGraphStructure::new(vec![inner, outer])
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub state: ScoreVector,
    pub current: Ballot,
    pub prefs: Vec<u32>,
    pub output: Vec<Ballot>,
    pub uod: Vec<Ballot>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JustificationReport {
    pub heuristic: String,
    pub contexts: usize,
    /// Output is empty exactly when the UOD set is.
    pub condition_i: bool,
    /// Output is contained in the UOD set.
    pub condition_ii: bool,
    /// Output equals the UOD set.
    pub strong: bool,
    pub failures_i: usize,
    pub failures_ii: usize,
    pub failures_strong: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl JustificationReport {
    pub fn justified(&self) -> bool {
        self.condition_i && self.condition_ii
    }
}

/// Checks both justification conditions over the given contexts, judging
/// dominance with the heuristic's own structure. Preferences take the
/// heuristic's bias.
pub fn check_justification(
    kind: &HeuristicKind,
    contexts: &[VoterContext],
    limits: &Limits,
) -> Result<JustificationReport> {
    let model = EpistemicModel::Heuristic {
        heuristic: kind.clone(),
    };
    let results = contexts
        .par_iter()
        .map(|ctx| {
            let mut ctx = ctx.clone();
            ctx.prefs = ctx.prefs.clone().with_bias(kind.bias());
            let mut output = evaluate_heuristic(kind, &ctx, limits)?;
            let mut uod = DominanceOracle::new(&ctx, &model, DominanceMode::Graph, limits)?.uod_set();
            output.sort();
            uod.sort();
            let i = output.is_empty() == uod.is_empty();
            let ii = output.iter().all(|a| uod.contains(a));
            let strong = output == uod;
            Ok((ctx, output, uod, i, ii, strong))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = JustificationReport {
        heuristic: kind.name().to_string(),
        contexts: contexts.len(),
        condition_i: true,
        condition_ii: true,
        strong: true,
        failures_i: 0,
        failures_ii: 0,
        failures_strong: 0,
        counterexamples: Vec::new(),
    };
    for (ctx, output, uod, i, ii, strong) in results {
        report.failures_i += !i as usize;
        report.failures_ii += !ii as usize;
        report.failures_strong += !strong as usize;
        if !strong && report.counterexamples.len() < MAX_COUNTEREXAMPLES {
            report.counterexamples.push(Counterexample {
                state: ctx.state,
                current: ctx.current,
                prefs: ctx.prefs.ranks().to_vec(),
                output,
                uod,
            });
        }
    }
    report.condition_i = report.failures_i == 0;
    report.condition_ii = report.failures_ii == 0;
    report.strong = report.failures_strong == 0;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    const W: usize = 0;
    const B: usize = 1;
    const C: usize = 2;
    const D: usize = 3;
    const E: usize = 4;

    fn ctx(rule: VotingRule, state: &[u32], current: Ballot, order: &[Candidate]) -> VoterContext {
        VoterContext::new(
            ScoreVector::new(state.to_vec()),
            current,
            PreferenceOrder::strict(order).unwrap(),
            rule,
        )
        .unwrap()
    }

    #[test]
    fn t_pragmatist_picks_the_favorite_leader() {
        let l = Limits::default();
        let c = ctx(VotingRule::plurality(5), &[29, 26, 22, 17, 6], Ballot::single(5, E), &[E, C, B, W, D]);
        let run = |t| evaluate_heuristic(&HeuristicKind::TPragmatist { t }, &c, &l).unwrap();
        assert_eq!(run(2), vec![Ballot::single(5, B)]);
        assert_eq!(run(3), vec![Ballot::single(5, C)]);
        assert_eq!(run(4), vec![Ballot::single(5, C)]);
        let model = build_model(&HeuristicKind::TStar { t: 3 }, &c, &l).unwrap();
        assert_eq!(model.levels()[0].edges(), vec![(W, C), (B, C)]);
    }

    #[test]
    fn borda_redeal_shifts_displaced_candidates() {
        let l = Limits::default();
        // current ranks 0 > 1 > 2 > 3; leaders are 3 and 2
        let c = ctx(VotingRule::borda(4), &[0, 1, 5, 9], Ballot::new(vec![3, 2, 1, 0]), &[2, 3, 0, 1]);
        let prag = evaluate_heuristic(&HeuristicKind::TPragmatist { t: 2 }, &c, &l).unwrap();
        assert_eq!(prag, vec![Ballot::new(vec![2, 1, 3, 0])]);
        let star = evaluate_heuristic(&HeuristicKind::TStar { t: 2 }, &c, &l).unwrap();
        assert_eq!(star, vec![Ballot::new(vec![2, 1, 3, 0])]);
        let star3 = evaluate_heuristic(&HeuristicKind::TStar { t: 3 }, &c, &l).unwrap();
        // leaders 3, 2, 1; favorite 2 on top, 1 and 3 at the bottom in current order
        assert_eq!(star3, vec![Ballot::new(vec![2, 1, 3, 0])]);
    }

    #[test]
    fn veto_t_star_moves_the_veto() {
        let l = Limits::default();
        let c = ctx(VotingRule::veto(3), &[5, 4, 0], Ballot::veto(3, 2), &[1, 2, 0]);
        let star = evaluate_heuristic(&HeuristicKind::TStar { t: 2 }, &c, &l).unwrap();
        assert_eq!(star, vec![Ballot::veto(3, 0)]);
    }

    #[test]
    fn leader_rule_examples() {
        let l = Limits::default();
        let c = ctx(VotingRule::approval(5), &[29, 26, 22, 17, 6], Ballot::new(vec![0; 5]), &[E, D, C, B, W]);
        let a = evaluate_heuristic(&HeuristicKind::LeaderRule, &c, &l).unwrap();
        assert_eq!(a, vec![Ballot::new(vec![0, 1, 1, 1, 1])]);
        let model = build_model(&HeuristicKind::LeaderRule, &c, &l).unwrap();
        assert_eq!(model.levels()[0].edges(), vec![(W, B)]);
        assert_eq!(model.levels()[1].edge_count(), 4);
        let p = ctx(VotingRule::plurality(5), &[1, 0, 0, 0, 0], Ballot::single(5, 0), &[0, 1, 2, 3, 4]);
        assert!(evaluate_heuristic(&HeuristicKind::LeaderRule, &p, &l).is_err());
    }

    #[test]
    fn not_last_moves_only_from_the_bottom() {
        let l = Limits::default();
        let top = ctx(VotingRule::plurality(3), &[1, 1, 1], Ballot::single(3, 0), &[0, 1, 2]);
        assert!(evaluate_heuristic(&HeuristicKind::NotLast, &top, &l).unwrap().is_empty());
        let last = ctx(VotingRule::plurality(3), &[1, 1, 1], Ballot::single(3, 2), &[0, 1, 2]);
        assert_eq!(evaluate_heuristic(&HeuristicKind::NotLast, &last, &l).unwrap().len(), 2);
        assert_eq!(build_model(&HeuristicKind::NotLast, &last, &l).unwrap().outermost().edge_count(), 3);
    }

    #[test]
    fn local_dominance_moves_to_a_contender() {
        let l = Limits::default();
        // voter for 2 (favorite) sees 0 and 1 within reach, 2 hopeless
        let c = ctx(VotingRule::plurality(3), &[5, 5, 0], Ballot::single(3, 2), &[2, 1, 0]);
        let kind = HeuristicKind::LocalDominance {
            metric: Metric::emd(10),
            r: Radius::votes(1, 10),
        };
        assert_eq!(evaluate_heuristic(&kind, &c, &l).unwrap(), vec![Ballot::single(3, 1)]);
    }
}
