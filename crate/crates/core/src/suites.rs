//! Property suites behind `verify`: each target runs a randomized or
//! exhaustive check and reports counts, notes and witnesses.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dominance::{
    od_check, od_check_biased, od_oracle, DominanceMode, DominanceOracle,
};
use crate::dynamics::{
    all_profiles, batch_verify, explore_all, generate_trial, run, BatchConfig, Game, ModelFamily,
    MovePolicy, SchedulerFamily,
};
use crate::election::{
    allowed_ballots_capped, ballot_menu, favored_ballot, outcome_raw, Ballot, Bias,
    PreferenceOrder, RuleKind, ScoreVector, VotingRule,
};
use crate::epistemic::{
    is_cliqued, pivot_structure, spp_check_menu, spp_check_tagged, spp_scan, upward_closed_under,
    InformationStructure, TaggedStates, VoterContext,
};
use crate::error::{Error, Result};
use crate::graph::{PivotGraph, PivotGraphStructure};
use crate::heuristics::{build_model, check_justification, evaluate_heuristic, HeuristicKind, JustificationReport};
use crate::metrics::{ball, Metric, MetricKind, Radius};
use crate::Limits;

pub const TARGETS: &[&str] = &[
    "lemma-partial-order",
    "alg-oracle",
    "obs-nash",
    "prop-justify-not-last",
    "prop-justify-ld",
    "prop-justify-truth-bias",
    "prop-justify-lazy-bias",
    "prop-justify-tstar",
    "prop-justify-tprag",
    "prop-justify-leader-rule",
    "prop-metric-topology",
    "thm-spp",
    "thm-converge-plurality",
    "thm-converge-veto",
    "converge-negative-control",
];

/// How many witnesses a report keeps.
const MAX_WITNESSES: usize = 8;

/// Scale knobs for every suite. Defaults are the full acceptance scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyParams {
    pub seed: u64,
    pub lemma_instances: usize,
    pub oracle_max_total: u32,
    pub nash_max_n: usize,
    pub ld_max_m: usize,
    pub ld_max_total: u32,
    pub ld_max_radius: u64,
    pub justify_samples: usize,
    pub leader_states: usize,
    pub topology_max_m: usize,
    pub topology_max_total: u32,
    pub topology_max_radius: u64,
    pub spp_samples: usize,
    pub spp_n: u64,
    pub spp_radii_percent: Vec<u64>,
    pub converge_trials: usize,
    pub converge_max_n: usize,
    pub converge_max_m: usize,
    pub converge_max_radius: u64,
    pub exhaustive_instances: usize,
    pub exhaustive_max_n: usize,
    pub exhaustive_max_m: usize,
    pub negative_trials: usize,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            seed: 1,
            lemma_instances: 10_000,
            oracle_max_total: 5,
            nash_max_n: 5,
            ld_max_m: 4,
            ld_max_total: 7,
            ld_max_radius: 2,
            justify_samples: 1000,
            leader_states: 100,
            topology_max_m: 4,
            topology_max_total: 30,
            topology_max_radius: 4,
            spp_samples: 100,
            spp_n: 500,
            spp_radii_percent: vec![1, 2],
            converge_trials: 1000,
            converge_max_n: 15,
            converge_max_m: 5,
            converge_max_radius: 2,
            exhaustive_instances: 24,
            exhaustive_max_n: 6,
            exhaustive_max_m: 3,
            negative_trials: 2000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub target: String,
    pub passed: bool,
    /// Nothing was checked; a pass is trivially true.
    pub vacuous: bool,
    pub checked: u64,
    pub skipped: u64,
    pub failures: u64,
    pub notes: Vec<String>,
    pub witnesses: Vec<String>,
}

impl SuiteReport {
    pub fn new(target: impl Into<String>) -> Self {
        SuiteReport {
            target: target.into(),
            passed: false,
            vacuous: false,
            checked: 0,
            skipped: 0,
            failures: 0,
            notes: Vec::new(),
            witnesses: Vec::new(),
        }
    }

    fn fail(&mut self, witness: impl FnOnce() -> String) {
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness());
        }
    }

    fn finish(mut self) -> Self {
        self.vacuous = self.checked == 0;
        self.passed = self.failures == 0;
        self
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

/// Runs a named target.
pub fn verify(target: &str, params: &VerifyParams, limits: &Limits) -> Result<Vec<SuiteReport>> {
    let one = |r: Result<SuiteReport>| r.map(|r| vec![r]);
    match target {
        "lemma-partial-order" => one(lemma_partial_order(params, limits)),
        "alg-oracle" => one(algorithm_oracle_equivalence(params, limits)),
        "obs-nash" => observation_full_information(params, limits),
        "prop-justify-not-last" => one(justify_not_last(limits)),
        "prop-justify-ld" => one(justify_local_dominance(params, limits)),
        "prop-justify-truth-bias" => one(justify_biased(Bias::Truth, params, limits)),
        "prop-justify-lazy-bias" => one(justify_biased(Bias::Lazy, params, limits)),
        "prop-justify-tstar" => justify_t_star(params, limits),
        "prop-justify-tprag" => one(t_pragmatist_witness(params, limits)),
        "prop-justify-leader-rule" => one(leader_rule_totality(params, limits)),
        "prop-metric-topology" => metric_topology(params, limits),
        "thm-spp" => one(spp_empirical(params, limits)),
        "thm-converge-plurality" => convergence(RuleKind::Plurality, params, limits),
        "thm-converge-veto" => convergence(RuleKind::Veto, params, limits),
        "converge-negative-control" => one(negative_control(params, limits)),
        _ => Err(Error::config(format!(
            "unknown verify target `{target}`; known: {}",
            TARGETS.join(", ")
        ))),
    }
}

/// Every strict order on `m` candidates.
pub fn strict_orders(m: usize) -> Vec<PreferenceOrder> {
    let mut perm: Vec<usize> = (0..m).collect();
    let mut out = vec![PreferenceOrder::strict(&perm).expect("permutation")];
    while crate::epistemic::next_permutation(&mut perm) {
        out.push(PreferenceOrder::strict(&perm).expect("permutation"));
    }
    out
}

/// Every non-negative vector of length `m` with sum exactly `total`.
pub fn states_with_total(m: usize, total: u32) -> Vec<ScoreVector> {
    fn rec(m: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<ScoreVector>) {
        if cur.len() + 1 == m {
            cur.push(left);
            out.push(ScoreVector::new(cur.clone()));
            cur.pop();
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(m, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, total, &mut Vec::new(), &mut out);
    out
}

/// Every non-negative vector of length `m` with sum at most `total`.
pub fn states_up_to(m: usize, total: u32) -> Vec<ScoreVector> {
    (0..=total).flat_map(|t| states_with_total(m, t)).collect()
}

fn random_strict(rng: &mut ChaCha8Rng, m: usize) -> PreferenceOrder {
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    PreferenceOrder::strict(&order).expect("permutation")
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn random_structure(rng: &mut ChaCha8Rng, m: usize, k: usize) -> PivotGraphStructure {
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect();
    let mut g = PivotGraph::empty(m);
    let mut levels = Vec::with_capacity(k);
    for _ in 0..k {
        let p: f64 = rng.random();
        for &(a, b) in &pairs {
            if rng.random_bool(p * 0.6) {
                g.add_edge(a, b);
            }
        }
        levels.push(g.clone());
    }
    PivotGraphStructure::new(levels).expect("nested by construction")
}

/// Irreflexivity, antisymmetry and transitivity of the graph-based check
/// (with the bias extension) on random structures and preferences.
pub fn lemma_partial_order(params: &VerifyParams, limits: &Limits) -> Result<SuiteReport> {
    let results = (0..params.lemma_instances)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(params.seed, i as u64);
            let (kind, m) = match rng.random_range(0..3) {
                0 => (RuleKind::Plurality, rng.random_range(2..=5)),
                1 => (RuleKind::Veto, rng.random_range(2..=5)),
                _ => (RuleKind::Borda, rng.random_range(2..=4)),
            };
            let rule = VotingRule::new(kind, m)?;
            let k = rng.random_range(1..=4);
            let structure = random_structure(&mut rng, m, k);
            let prefs = if rng.random_bool(0.2) {
                PreferenceOrder::from_ranks((0..m).map(|_| rng.random_range(0..m as u32)).collect())?
            } else {
                random_strict(&mut rng, m)
            };
            let bias = match rng.random_range(0..4) {
                0 => Bias::Truth,
                1 => Bias::Lazy,
                _ => Bias::None,
            };
            let prefs = prefs.with_bias(bias);
            let menu = ballot_menu(&rule, bias, &limits.ballots)?;
            let favored = favored_ballot(&rule, &prefs);
            let nb = menu.len();
            let mut dom = vec![false; nb * nb];
            for x in 0..nb {
                for y in 0..nb {
                    dom[x * nb + y] =
                        od_check_biased(&menu[x], &menu[y], &prefs, &structure, favored.as_ref())?.dominates;
                }
            }
            let mut bad = Vec::new();
            for x in 0..nb {
                if dom[x * nb + x] {
                    bad.push(format!("irreflexivity: {} under {rule}", menu[x]));
                }
                for y in 0..nb {
                    if !dom[x * nb + y] {
                        continue;
                    }
                    if dom[y * nb + x] {
                        bad.push(format!("antisymmetry: {} vs {} under {rule}", menu[x], menu[y]));
                    }
                    for z in 0..nb {
                        if dom[y * nb + z] && !dom[x * nb + z] {
                            bad.push(format!(
                                "transitivity: {} > {} > {} under {rule}",
                                menu[x], menu[y], menu[z]
                            ));
                        }
                    }
                }
            }
            Ok(((nb * nb * nb) as u64, bad))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut r = SuiteReport::new("lemma-partial-order");
    for (checked, bad) in results {
        r.checked += checked;
        for b in bad {
            r.fail(|| b);
        }
    }
    r.note(format!("{} instances, ballot triples counted in `checked`", params.lemma_instances));
    Ok(r.finish())
}

/// Nested radius sequences drawn from `0..=max`.
fn radius_sequences(max: u64) -> Vec<Vec<u64>> {
    let values: Vec<u64> = (0..=max).collect();
    (1u32..1 << values.len())
        .map(|mask| values.iter().copied().filter(|&v| mask >> v & 1 == 1).collect())
        .collect()
}

/// The graph-based check against literal set dominance on concentric EMD
/// structures with the sharp pivot property (plurality, m = 3).
pub fn algorithm_oracle_equivalence(params: &VerifyParams, limits: &Limits) -> Result<SuiteReport> {
    let m = 3;
    let rule = VotingRule::plurality(m);
    let ballots = allowed_ballots_capped(&rule, &limits.ballots)?;
    let orders = strict_orders(m);
    let weak: Vec<PreferenceOrder> = (0..27u32)
        .map(|x| PreferenceOrder::from_ranks(vec![x % 3, x / 3 % 3, x / 9]).expect("ranks"))
        .filter(|p| !p.is_strict())
        .collect();
    let mut jobs = Vec::new();
    for s in states_up_to(m, params.oracle_max_total) {
        for radii in radius_sequences(2) {
            jobs.push((s.clone(), radii));
        }
    }
    let results = jobs
        .par_iter()
        .map(|(s, radii)| {
            let n = s.total() + 1;
            let metric = Metric::emd(n);
            let rs: Vec<Radius> = radii.iter().map(|&r| Radius::votes(r, n)).collect();
            let tagged = TaggedStates::concentric(&metric, s, &rs, limits)?;
            if !spp_check_tagged(&tagged, &rule, limits)?.holds {
                return Ok(None);
            }
            let structure = pivot_structure(&tagged, &rule, limits)?;
            let sets = InformationStructure::concentric(&metric, s, &rs);
            let mut strict = (0u64, Vec::new());
            let mut weak_out = (0u64, 0u64);
            for (pi, prefs) in orders.iter().chain(&weak).enumerate() {
                for a_new in &ballots {
                    for a_cur in &ballots {
                        let g = od_check(a_new, a_cur, prefs, &structure)?.dominates;
                        let o = od_oracle(a_new, a_cur, prefs, &sets, &rule, limits)?;
                        if pi < orders.len() {
                            strict.0 += 1;
                            if g != o {
                                strict.1.push(format!(
                                    "s={s} radii={radii:?} prefs={:?} {a_new} vs {a_cur}: graph {g}, oracle {o}",
                                    prefs.ranks()
                                ));
                            }
                        } else {
                            weak_out.0 += 1;
                            if g != o {
                                weak_out.1 += 1;
                                strict.1.push(format!(
                                    "s={s} radii={radii:?} weak prefs={:?} {a_new} vs {a_cur}: graph {g}, oracle {o}",
                                    prefs.ranks()
                                ));
                            }
                        }
                    }
                }
            }
            Ok(Some((strict, weak_out)))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut r = SuiteReport::new("alg-oracle");
    let (mut weak_checked, mut weak_bad) = (0, 0);
    for res in results {
        match res {
            None => r.skipped += 1,
            Some(((checked, bad), (wc, wb))) => {
                r.checked += checked;
                for b in bad {
                    r.fail(|| b);
                }
                r.checked += wc;
                weak_checked += wc;
                weak_bad += wb;
            }
        }
    }
    r.note(format!(
        "{} (state, radii) structures, {} without the sharp pivot property skipped",
        jobs.len(),
        r.skipped
    ));
    r.note(format!("of which weak orders: {weak_bad} disagreements in {weak_checked} pairs"));
    Ok(r.finish())
}

/// With full information, OD/UOD sets and equilibria against
/// better/best responses and pure Nash equilibria.
pub fn observation_full_information(params: &VerifyParams, limits: &Limits) -> Result<Vec<SuiteReport>> {
    let model = crate::epistemic::EpistemicModel::FullInformation;
    let mut sets = SuiteReport::new("obs-nash/responses");
    let mut eq = SuiteReport::new("obs-nash/equilibria");
    let mut graph_disagree = 0u64;
    for m in 2..=3 {
        let rule = VotingRule::plurality(m);
        let ballots = allowed_ballots_capped(&rule, &limits.ballots)?;
        let orders = strict_orders(m);
        let max_total = params.nash_max_n.saturating_sub(1) as u32;
        let mut jobs = Vec::new();
        for s in states_up_to(m, max_total) {
            for cur in &ballots {
                for p in &orders {
                    jobs.push((s.clone(), cur.clone(), p.clone()));
                }
            }
        }
        let results = jobs
            .par_iter()
            .map(|(s, cur, p)| {
                let ctx = VoterContext::new(s.clone(), cur.clone(), p.clone(), rule)?;
                let auto = DominanceOracle::new(&ctx, &model, DominanceMode::Auto, limits)?;
                let graph = DominanceOracle::new(&ctx, &model, DominanceMode::Graph, limits)?;
                let win = |a: &Ballot| outcome_raw(s.scores(), a.scores());
                let w_cur = win(cur);
                let better: Vec<Ballot> = ballots.iter().filter(|a| p.prefers(win(a), w_cur)).cloned().collect();
                let best_w = ballots.iter().map(win).max_by(|&x, &y| p.cmp_candidates(x, y)).expect("ballots");
                let best: Vec<Ballot> = better
                    .iter()
                    .filter(|a| p.cmp_candidates(win(a), best_w).is_eq())
                    .cloned()
                    .collect();
                let od = auto.od_set();
                let uod = auto.uod_set();
                let ok = od == better && uod == best;
                Ok((ok, graph.od_set() != better, format!("s={s} cur={cur} prefs={:?}: od={od:?} better={better:?} uod={uod:?} best={best:?}", p.ranks())))
            })
            .collect::<Result<Vec<_>>>()?;
        for (ok, gd, w) in results {
            sets.checked += 1;
            graph_disagree += gd as u64;
            if !ok {
                sets.fail(|| w);
            }
        }

        // equilibria over multisets of (preference, ballot) types
        let types: Vec<(usize, usize)> = (0..orders.len()).flat_map(|p| (0..ballots.len()).map(move |b| (p, b))).collect();
        let mut profiles: Vec<Vec<usize>> = Vec::new();
        for n in 1..=params.nash_max_n {
            multisets(types.len(), n, 0, &mut Vec::new(), &mut profiles);
        }
        let results = profiles
            .par_iter()
            .map(|ms| {
                let prefs: Vec<PreferenceOrder> = ms.iter().map(|&t| orders[types[t].0].clone()).collect();
                let profile: Vec<Ballot> = ms.iter().map(|&t| ballots[types[t].1].clone()).collect();
                let models = vec![model.clone(); ms.len()];
                let rep = crate::dominance::is_od_equilibrium(&profile, &prefs, &models, &rule, DominanceMode::Auto, limits)?;
                let total = crate::dominance::aggregate(&profile, m)?;
                let nash = (0..ms.len()).all(|i| {
                    let others = total.minus(&profile[i]).expect("own ballot is in the tally");
                    let w_cur = outcome_raw(others.scores(), profile[i].scores());
                    ballots.iter().all(|a| !prefs[i].prefers(outcome_raw(others.scores(), a.scores()), w_cur))
                });
                Ok((rep.is_equilibrium == nash, format!("profile {profile:?} prefs {:?}: od-eq {} nash {nash}", prefs.iter().map(|p| p.ranks().to_vec()).collect::<Vec<_>>(), rep.is_equilibrium)))
            })
            .collect::<Result<Vec<_>>>()?;
        for (ok, w) in results {
            eq.checked += 1;
            if !ok {
                eq.fail(|| w);
            }
        }
    }
    sets.note(format!(
        "the graph-only check differs from better responses in {graph_disagree} of {} contexts",
        sets.checked
    ));
    Ok(vec![sets.finish(), eq.finish()])
}

fn multisets(types: usize, n: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    for t in from..types {
        cur.push(t);
        multisets(types, n, t, cur, out);
        cur.pop();
    }
}

fn report_from_justification(target: &str, j: &JustificationReport, strong_required: bool) -> SuiteReport {
    let mut r = SuiteReport::new(target);
    r.checked = j.contexts as u64;
    r.failures = if strong_required {
        j.failures_strong as u64
    } else {
        (j.failures_i.max(j.failures_ii)) as u64
    };
    r.note(format!(
        "condition I {} ({} failures), condition II {} ({} failures), strong {} ({} failures)",
        j.condition_i, j.failures_i, j.condition_ii, j.failures_ii, j.strong, j.failures_strong
    ));
    for c in j.counterexamples.iter().take(MAX_WITNESSES) {
        r.witnesses.push(serde_json::to_string(c).expect("serializable"));
    }
    r.finish()
}

/// Not-last against the complete graph, every plurality context up to m = 4.
pub fn justify_not_last(limits: &Limits) -> Result<SuiteReport> {
    let mut contexts = Vec::new();
    for m in 2..=4 {
        let rule = VotingRule::plurality(m);
        for p in strict_orders(m) {
            for c in 0..m {
                contexts.push(VoterContext::new(ScoreVector::zeros(m), Ballot::single(m, c), p.clone(), rule)?);
            }
        }
    }
    let j = check_justification(&HeuristicKind::NotLast, &contexts, limits)?;
    Ok(report_from_justification("prop-justify-not-last", &j, true))
}

/// Contexts for the local-dominance family: every state up to the total,
/// radius sequence, order and current ballot. Each carries whether its
/// ball sets have the sharp pivot property.
fn ld_contexts(
    params: &VerifyParams,
    radii: &[Vec<u64>],
    with_abstain: bool,
    limits: &Limits,
) -> Result<Vec<LdContext>> {
    let mut groups = Vec::new();
    for m in 2..=params.ld_max_m {
        for s in states_up_to(m, params.ld_max_total) {
            for r in radii {
                groups.push((m, s.clone(), r.clone()));
            }
        }
    }
    let per = groups
        .par_iter()
        .map(|(m, s, r)| {
            let rule = VotingRule::plurality(*m);
            let n = s.total() + 1;
            let metric = Metric::emd(n);
            let rs: Vec<Radius> = r.iter().map(|&v| Radius::votes(v, n)).collect();
            let tagged = TaggedStates::concentric(&metric, s, &rs, limits)?;
            let bias = if with_abstain { Bias::Lazy } else { Bias::None };
            let menu = ballot_menu(&rule, bias, &limits.ballots)?;
            let sharp = spp_check_menu(&tagged, &rule, &menu, limits)?.holds;
            let mut out = Vec::new();
            let mut currents: Vec<Ballot> = (0..*m).map(|c| Ballot::single(*m, c)).collect();
            if with_abstain {
                currents.push(Ballot::abstain(*m));
            }
            for p in strict_orders(*m) {
                let p = if with_abstain { p.with_bias(Bias::Lazy) } else { p };
                for cur in &currents {
                    out.push(LdContext {
                        radii: r.clone(),
                        sharp,
                        ctx: VoterContext::new(s.clone(), cur.clone(), p.clone(), rule)?,
                    });
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per.into_iter().flatten().collect())
}

struct LdContext {
    radii: Vec<u64>,
    sharp: bool,
    ctx: VoterContext,
}

/// Justification over the whole family, with the sharp-pivot subset
/// broken out in the notes.
fn ld_family_report(
    target: &str,
    contexts: &[LdContext],
    radii: &[Vec<u64>],
    kind_for: impl Fn(&[u64]) -> HeuristicKind,
    limits: &Limits,
) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(target);
    let mut totals = [[0usize; 4]; 2];
    for sharp in [true, false] {
        for rr in radii {
            let sub: Vec<VoterContext> = contexts
                .iter()
                .filter(|c| c.radii == *rr && c.sharp == sharp)
                .map(|c| c.ctx.clone())
                .collect();
            if sub.is_empty() {
                continue;
            }
            let j = check_justification_scaled(&kind_for(rr), &sub, limits)?;
            let t = &mut totals[sharp as usize];
            t[0] += j.contexts;
            t[1] += j.failures_i;
            t[2] += j.failures_ii;
            t[3] += j.failures_strong;
            for c in &j.counterexamples {
                let bad_i = c.output.is_empty() != c.uod.is_empty();
                let bad_ii = c.output.iter().any(|a| !c.uod.contains(a));
                if (bad_i || bad_ii) && r.witnesses.len() < MAX_WITNESSES {
                    r.witnesses.push(format!(
                        "radii {rr:?}{}: {}",
                        if sharp { ", sharp" } else { "" },
                        serde_json::to_string(c).expect("serializable")
                    ));
                }
            }
        }
    }
    let [not_sharp, sharp] = totals;
    r.checked = (sharp[0] + not_sharp[0]) as u64;
    let fi = sharp[1] + not_sharp[1];
    let fii = sharp[2] + not_sharp[2];
    r.failures = (fi + fii) as u64;
    r.note(format!(
        "all contexts: condition I failures {fi}, condition II failures {fii}, strong failures {}",
        sharp[3] + not_sharp[3]
    ));
    r.note(format!(
        "{} contexts whose ball sets have the sharp pivot property: condition I failures {}, condition II failures {}",
        sharp[0], sharp[1], sharp[2]
    ));
    Ok(r.finish())
}

/// Rescales the heuristic's metric to each context's population, since
/// radii are given in votes.
fn check_justification_scaled(
    kind: &HeuristicKind,
    contexts: &[VoterContext],
    limits: &Limits,
) -> Result<JustificationReport> {
    let mut merged: Option<JustificationReport> = None;
    let mut by_scale: std::collections::BTreeMap<u64, Vec<VoterContext>> = Default::default();
    for c in contexts {
        by_scale.entry(c.state.total() + 1).or_default().push(c.clone());
    }
    for (n, ctxs) in by_scale {
        let k = rescale(kind, n);
        let j = check_justification(&k, &ctxs, limits)?;
        merged = Some(match merged {
            None => j,
            Some(mut acc) => {
                acc.contexts += j.contexts;
                acc.failures_i += j.failures_i;
                acc.failures_ii += j.failures_ii;
                acc.failures_strong += j.failures_strong;
                acc.condition_i &= j.condition_i;
                acc.condition_ii &= j.condition_ii;
                acc.strong &= j.strong;
                acc.counterexamples.extend(j.counterexamples);
                acc
            }
        });
    }
    Ok(merged.unwrap_or(JustificationReport {
        heuristic: kind.name().into(),
        contexts: 0,
        condition_i: true,
        condition_ii: true,
        strong: true,
        failures_i: 0,
        failures_ii: 0,
        failures_strong: 0,
        counterexamples: Vec::new(),
    }))
}

fn rescale(kind: &HeuristicKind, n: u64) -> HeuristicKind {
    let re = |r: &Radius| Radius::votes(r.vote_units, n);
    match kind {
        HeuristicKind::LocalDominance { r, .. } => HeuristicKind::LocalDominance {
            metric: Metric::emd(n),
            r: re(r),
        },
        HeuristicKind::TruthBiasLd { r1, r2, .. } => HeuristicKind::TruthBiasLd {
            metric: Metric::emd(n),
            r1: re(r1),
            r2: re(r2),
        },
        HeuristicKind::LazyBiasLd { r1, r2, .. } => HeuristicKind::LazyBiasLd {
            metric: Metric::emd(n),
            r1: re(r1),
            r2: re(r2),
        },
        other => other.clone(),
    }
}

/// Local dominance against its ball pivot graph, exhaustively.
pub fn justify_local_dominance(params: &VerifyParams, limits: &Limits) -> Result<SuiteReport> {
    let radii: Vec<Vec<u64>> = (0..=params.ld_max_radius).map(|r| vec![r]).collect();
    let contexts = ld_contexts(params, &radii, false, limits)?;
    ld_family_report(
        "prop-justify-ld",
        &contexts,
        &radii,
        |r| HeuristicKind::LocalDominance {
            metric: Metric::emd(1),
            r: Radius::votes(r[0], 1),
        },
        limits,
    )
}

/// Truth- or lazy-biased local dominance against the filtered two-level
/// structure; conditions I and II.
pub fn justify_biased(bias: Bias, params: &VerifyParams, limits: &Limits) -> Result<SuiteReport> {
    let mut radii = Vec::new();
    for r1 in 0..=params.ld_max_radius {
        for r2 in r1 + 1..=params.ld_max_radius {
            radii.push(vec![r1, r2]);
        }
    }
    let lazy = bias == Bias::Lazy;
    let contexts = ld_contexts(params, &radii, lazy, limits)?;
    let target = if lazy { "prop-justify-lazy-bias" } else { "prop-justify-truth-bias" };
    ld_family_report(
        target,
        &contexts,
        &radii,
        |r| {
            let (r1, r2) = (Radius::votes(r[0], 1), Radius::votes(r[1], 1));
            if lazy {
                HeuristicKind::LazyBiasLd { metric: Metric::emd(1), r1, r2 }
            } else {
                HeuristicKind::TruthBiasLd { metric: Metric::emd(1), r1, r2 }
            }
        },
        limits,
    )
}

fn t_contexts(rule_kind: RuleKind, samples: usize, seed: u64, t_min: usize, limits: &Limits) -> Result<Vec<(usize, VoterContext)>> {
    (0..samples)
        .map(|i| {
            let mut rng = rng_for(seed, i as u64);
            let m = rng.random_range(t_min.max(2)..=4);
            let rule = VotingRule::new(rule_kind, m)?;
            let t = rng.random_range(t_min..=m);
            let ballots = allowed_ballots_capped(&rule, &limits.ballots)?;
            let s = ScoreVector::new((0..m).map(|_| rng.random_range(0..=20)).collect());
            let cur = ballots[rng.random_range(0..ballots.len())].clone();
            let p = random_strict(&mut rng, m);
            Ok((t, VoterContext::new(s, cur, p, rule)?))
        })
        .collect()
}

/// T* against its star structure, one report per rule.
pub fn justify_t_star(params: &VerifyParams, limits: &Limits) -> Result<Vec<SuiteReport>> {
    let mut out = Vec::new();
    for (i, kind) in [RuleKind::Plurality, RuleKind::Veto, RuleKind::Borda, RuleKind::Approval]
        .into_iter()
        .enumerate()
    {
        let contexts = t_contexts(kind, params.justify_samples, params.seed ^ (0x7a57 + i as u64), 2, limits)?;
        let mut parts = Vec::new();
        for t in 2..=4 {
            let sub: Vec<VoterContext> = contexts.iter().filter(|(tt, _)| *tt == t).map(|(_, c)| c.clone()).collect();
            if !sub.is_empty() {
                parts.push(check_justification(&HeuristicKind::TStar { t }, &sub, limits)?);
            }
        }
        let mut r = SuiteReport::new(format!("prop-justify-tstar/{}", rule_name(kind)));
        let (mut fi, mut fii, mut fs) = (0, 0, 0);
        for j in &parts {
            r.checked += j.contexts as u64;
            fi += j.failures_i;
            fii += j.failures_ii;
            fs += j.failures_strong;
            for c in &j.counterexamples {
                if r.witnesses.len() < MAX_WITNESSES {
                    r.witnesses.push(serde_json::to_string(c).expect("serializable"));
                }
            }
        }
        r.failures = fs as u64;
        r.note(format!("condition I failures {fi}, condition II failures {fii}, strong failures {fs}"));
        // T = 1 leaves a star without leaves: no dominance at all
        let ones = t_contexts(kind, params.justify_samples / 10, params.seed ^ 0x51, 1, limits)?
            .into_iter()
            .filter(|(t, _)| *t == 1)
            .map(|(_, c)| c)
            .collect::<Vec<_>>();
        if !ones.is_empty() {
            let j = check_justification(&HeuristicKind::TStar { t: 1 }, &ones, limits)?;
            r.note(format!(
                "T = 1 probe: {} contexts, condition I failures {}",
                j.contexts, j.failures_i
            ));
        }
        out.push(r.finish());
    }
    Ok(out)
}

fn rule_name(kind: RuleKind) -> String {
    match kind {
        RuleKind::Plurality => "plurality".into(),
        RuleKind::Veto => "veto".into(),
        RuleKind::Borda => "borda".into(),
        RuleKind::Approval => "approval".into(),
        RuleKind::KApproval(k) => format!("{k}-approval"),
    }
}

/// Finds T-pragmatist outputs that another ballot dominates (Borda, m = 4).
pub fn t_pragmatist_witness(params: &VerifyParams, limits: &Limits) -> Result<SuiteReport> {
    let rule = VotingRule::borda(4);
    let ballots = allowed_ballots_capped(&rule, &limits.ballots)?;
    let mut r = SuiteReport::new("prop-justify-tprag");
    let mut found = 0u64;
    for i in 0..params.justify_samples {
        let mut rng = rng_for(params.seed ^ 0x9a9, i as u64);
        let t = rng.random_range(2..=4);
        let s = ScoreVector::new((0..4).map(|_| rng.random_range(0..=20)).collect());
        let cur = ballots[rng.random_range(0..ballots.len())].clone();
        let p = random_strict(&mut rng, 4);
        let ctx = VoterContext::new(s, cur, p, rule)?;
        let kind = HeuristicKind::TPragmatist { t };
        let out = evaluate_heuristic(&kind, &ctx, limits)?;
        let structure = build_model(&kind, &ctx, limits)?;
        r.checked += 1;
        for a in &out {
            if let Some(d) = ballots.iter().find(|d| od_check(d, a, &ctx.prefs, &structure).map(|v| v.dominates).unwrap_or(false)) {
                found += 1;
                if r.witnesses.len() < MAX_WITNESSES {
                    r.witnesses.push(format!(
                        "T={t} s={} current={} prefs={:?}: output {a} is dominated by {d}",
                        ctx.state,
                        ctx.current,
                        ctx.prefs.ranks()
                    ));
                }
            }
        }
    }
    r.note(format!("{found} dominated outputs in {} contexts", r.checked));
    r.failures = (found == 0) as u64;
    Ok(r.finish())
}

/// The leader-rule ballot dominates every other approval ballot.
pub fn leader_rule_totality(params: &VerifyParams, limits: &Limits) -> Result<SuiteReport> {
    let m = 5;
    let rule = VotingRule::approval(m);
    let ballots = allowed_ballots_capped(&rule, &limits.ballots)?;
    let mut rng = rng_for(params.seed, 0x1ead);
    let states: Vec<ScoreVector> = (0..params.leader_states)
        .map(|_| ScoreVector::new((0..m).map(|_| rng.random_range(0..=30)).collect()))
        .collect();
    let orders = strict_orders(m);
    let results = orders
        .par_iter()
        .map(|p| {
            let mut checked = 0u64;
            let mut bad = Vec::new();
            for s in &states {
                let ctx = VoterContext::new(s.clone(), Ballot::abstain(m), p.clone(), rule)?;
                let lr = evaluate_heuristic(&HeuristicKind::LeaderRule, &ctx, limits)?.remove(0);
                let h = build_model(&HeuristicKind::LeaderRule, &ctx, limits)?;
                for a in ballots.iter().filter(|a| **a != lr) {
                    checked += 1;
                    if !od_check(&lr, a, p, &h)?.dominates {
                        bad.push(format!("s={s} prefs={:?}: {lr} does not dominate {a}", p.ranks()));
                    }
                }
            }
            Ok((checked, bad))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut r = SuiteReport::new("prop-justify-leader-rule");
    for (c, bad) in results {
        r.checked += c;
        for b in bad {
            r.fail(|| b);
        }
    }
    Ok(r.finish())
}

/// Balls of candidate-wise metrics give cliqued structures, balls of
/// neutral metrics give structures upward closed under the score order.
pub fn metric_topology(params: &VerifyParams, limits: &Limits) -> Result<Vec<SuiteReport>> {
    let radii: Vec<u64> = (0..=params.topology_max_radius).collect();
    let families: [(&str, fn(u64, usize) -> Metric, bool); 4] = [
        ("linf", |n, _| Metric::linf(n), true),
        ("candidate-wise", |n, m| Metric::new(MetricKind::CandidateWise { weights: vec![2; m] }, n), true),
        ("emd", |n, _| Metric::emd(n), false),
        ("l1", |n, _| Metric::l1(n, false), false),
    ];
    let mut out = Vec::new();
    for (name, make, cliqued) in families {
        for kind in [RuleKind::Plurality, RuleKind::Veto] {
            let mut r = SuiteReport::new(format!("prop-metric-topology/{name}/{}", rule_name(kind)));
            for m in 2..=params.topology_max_m {
                let rule = VotingRule::new(kind, m)?;
                let centers = states_up_to(m, params.topology_max_total);
                let results = centers
                    .par_iter()
                    .map(|c| {
                        let n = c.total().max(1);
                        let metric = make(n, m);
                        let rs: Vec<Radius> = radii.iter().map(|&v| Radius::votes(v, n)).collect();
                        let tagged = TaggedStates::concentric(&metric, c, &rs, limits)?;
                        let s = pivot_structure(&tagged, &rule, limits)?;
                        let ok = if cliqued {
                            is_cliqued(&s)
                        } else {
                            upward_closed_under(&s, &c.score_order())
                        };
                        Ok((ok, format!("{rule} center {c}: {}", serde_json::to_string(&s).expect("json"))))
                    })
                    .collect::<Result<Vec<_>>>()?;
                for (ok, w) in results {
                    r.checked += 1;
                    if !ok {
                        r.fail(|| w);
                    }
                }
            }
            out.push(r.finish());
        }
    }
    Ok(out)
}

/// Independent recheck of one violation: the edge exists in the ball and
/// no state of the ball makes the pair pivotal for it.
fn confirm_violation(
    metric: &Metric,
    center: &ScoreVector,
    radius: Radius,
    rule: &VotingRule,
    v: &crate::epistemic::SppViolation,
    limits: &Limits,
) -> Result<bool> {
    let states = ball(metric, center, radius)?;
    let ballots = allowed_ballots_capped(rule, &limits.ballots)?;
    let (x, y) = (v.favored, v.other);
    let edge = states.iter().any(|s| {
        let ws: Vec<usize> = ballots.iter().map(|a| outcome_raw(s.scores(), a.scores())).collect();
        ws.contains(&x) && ws.contains(&y)
    });
    let gap = |a: &Ballot| a.get(x) as i64 - a.get(y) as i64;
    let widening = gap(&v.pair.0) > gap(&v.pair.1);
    let pivotal = states.iter().any(|s| {
        outcome_raw(s.scores(), v.pair.0.scores()) == x && outcome_raw(s.scores(), v.pair.1.scores()) == y
    });
    Ok(edge && widening && !pivotal)
}

/// The sharp pivot property around rounded random polls.
pub fn spp_empirical(params: &VerifyParams, limits: &Limits) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("thm-spp");
    let radii: Vec<num_rational::Ratio<u64>> = params
        .spp_radii_percent
        .iter()
        .map(|&p| num_rational::Ratio::new(p, 100))
        .collect();
    let mut holds = 0u64;
    let mut confirmed = 0u64;
    let mut failed = 0u64;
    for m in 3..=5usize {
        let rule = VotingRule::plurality(m);
        let jobs: Vec<Vec<f64>> = (0..params.spp_samples)
            .map(|i| {
                let mut rng = rng_for(params.seed ^ 0x5bb, (m * 100_000 + i) as u64);
                let g: Vec<f64> = (0..m).map(|_| Exp1.sample(&mut rng)).collect();
                let sum: f64 = g.iter().sum();
                g.into_iter().map(|x| x / sum).collect()
            })
            .collect();
        let results = jobs
            .par_iter()
            .map(|p| {
                let entry = spp_scan(p, &[params.spp_n], &MetricKind::Emd, &radii, &rule, limits)?.remove(0);
                let Some(report) = entry.report else {
                    return Ok(None);
                };
                let metric = Metric::emd(params.spp_n);
                let mut all_confirmed = true;
                for v in &report.violations {
                    let radius = Radius::fraction(radii[v.level - 1], params.spp_n)?;
                    all_confirmed &= confirm_violation(&metric, &entry.state, radius, &rule, v, limits)?;
                }
                Ok(Some((entry.state, report.holds, all_confirmed, report.violation_count, report.violations.first().cloned())))
            })
            .collect::<Result<Vec<_>>>()?;
        for res in results {
            let Some((state, ok, conf, count, first)) = res else {
                r.skipped += 1;
                continue;
            };
            r.checked += 1;
            if ok {
                holds += 1;
            } else {
                failed += 1;
                confirmed += conf as u64;
                if r.witnesses.len() < MAX_WITNESSES {
                    r.witnesses.push(format!(
                        "m={m} poll {state}: {count} violations, first {}",
                        serde_json::to_string(&first).expect("json")
                    ));
                }
                if !conf {
                    r.note(format!("unconfirmed violation at poll {state}"));
                }
            }
        }
    }
    let rate = holds as f64 / r.checked.max(1) as f64;
    r.note(format!(
        "SPP held in {holds} of {} samples ({:.2}%), {confirmed} of {failed} failures independently confirmed",
        r.checked,
        rate * 100.0
    ));
    r.failures = (rate < SPP_RATE_THRESHOLD || confirmed != failed) as u64;
    Ok(r.finish())
}

/// Required share of sampled polls with the sharp pivot property.
pub const SPP_RATE_THRESHOLD: f64 = 0.99;

/// Batches under both move policies plus exhaustive adversarial search.
pub fn convergence(rule: RuleKind, params: &VerifyParams, limits: &Limits) -> Result<Vec<SuiteReport>> {
    let name = rule_name(rule);
    let mut out = Vec::new();
    for policy in [MovePolicy::BestUod, MovePolicy::AnyOd] {
        let pname = policy_name(&policy);
        let cfg = BatchConfig {
            rule,
            m: (2, params.converge_max_m),
            n: (2, params.converge_max_n),
            models: ModelFamily::LInf {
                max_radius: params.converge_max_radius,
                max_levels: 3,
            },
            schedulers: SchedulerFamily::Mixed,
            policy: policy.clone(),
            trials: params.converge_trials,
            seed: params.seed,
            truthful_start: false,
            mode: DominanceMode::Auto,
            step_cap: None,
            limits: *limits,
        };
        let rep = batch_verify(&cfg)?;
        let cliqued = rep
            .cycle_trials
            .par_iter()
            .map(|&i| {
                let trial = generate_trial(&cfg, i)?;
                let t = run(&trial.game, &trial.initial, &trial.scheduler, &policy, cfg.step_cap)?;
                cycle_cliqued(&trial.game, &t.cycle_states())
            })
            .collect::<Result<Vec<bool>>>()?;
        let mut r = SuiteReport::new(format!("thm-converge-{name}/batch-{pname}"));
        r.checked = rep.trials as u64;
        r.failures = (rep.trials - rep.converged + rep.unverified) as u64;
        r.note(format!(
            "converged {}, cycles {}, truncated {}, errors {}, unverified {}, steps {:?}",
            rep.converged, rep.cycles, rep.truncated, rep.errors, rep.unverified, rep.steps
        ));
        r.note(format!(
            "cycles with every structure on the cycle cliqued: {}",
            cliqued.iter().filter(|&&c| c).count()
        ));
        for (trial, t) in rep.cycle_witnesses.iter().take(2) {
            r.witnesses.push(format!(
                "trial {} status {:?}: {}",
                trial.index,
                t.status,
                serde_json::to_string(&(&trial.game.prefs, &trial.game.models, &trial.initial)).expect("json")
            ));
        }
        for e in &rep.error_messages {
            r.witnesses.push(e.clone());
        }
        out.push(r.finish());
    }
    for policy in [MovePolicy::BestUod, MovePolicy::AnyOd] {
        let pname = policy_name(&policy);
        let cfg = BatchConfig {
            rule,
            m: (2, params.exhaustive_max_m),
            n: (2, params.exhaustive_max_n),
            models: ModelFamily::LInf {
                max_radius: 2,
                max_levels: 3,
            },
            schedulers: SchedulerFamily::RoundRobin,
            policy: policy.clone(),
            trials: params.exhaustive_instances,
            seed: params.seed ^ 0xe4,
            truthful_start: false,
            mode: DominanceMode::Auto,
            step_cap: None,
            limits: *limits,
        };
        let results = (0..params.exhaustive_instances)
            .into_par_iter()
            .map(|i| {
                let trial = generate_trial(&cfg, i)?;
                let ballots = allowed_ballots_capped(&trial.game.rule, &limits.ballots)?;
                let roots = all_profiles(&ballots, trial.game.n());
                let e = explore_all(&trial.game, &roots, &policy, usize::MAX)?;
                Ok((trial, e))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut r = SuiteReport::new(format!("thm-converge-{name}/exhaustive-{pname}"));
        let mut profiles = 0;
        let mut cliqued = 0;
        for (trial, e) in results {
            r.checked += 1;
            profiles += e.profiles;
            if let Some(cycle) = e.cycle {
                cliqued += cycle_cliqued(&trial.game, &cycle)? as usize;
                r.fail(|| {
                    format!(
                        "instance {}: prefs {:?} models {} cycle {:?}",
                        trial.index,
                        trial.game.prefs.iter().map(|p| p.ranks().to_vec()).collect::<Vec<_>>(),
                        serde_json::to_string(&trial.game.models).expect("json"),
                        cycle.iter().map(|p| p.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>()
                    )
                });
            }
        }
        r.note(format!("{profiles} profiles explored over {} instances", r.checked));
        r.note(format!("cycles with every structure on the cycle cliqued: {cliqued}"));
        out.push(r.finish());
    }
    Ok(out)
}

fn cycle_cliqued(game: &Game, cycle: &[Vec<Ballot>]) -> Result<bool> {
    for p in cycle {
        if !game.cliqued_at(p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn policy_name(p: &MovePolicy) -> &'static str {
    match p {
        MovePolicy::BestUod => "best-uod",
        MovePolicy::AnyOd => "any-od",
        MovePolicy::Heuristic { .. } => "heuristic",
    }
}

/// Borda with full information may cycle; the engine must report it.
pub fn negative_control(params: &VerifyParams, limits: &Limits) -> Result<SuiteReport> {
    let cfg = BatchConfig {
        rule: RuleKind::Borda,
        m: (3, 4),
        n: (2, 5),
        models: ModelFamily::FullInformation,
        schedulers: SchedulerFamily::Mixed,
        policy: MovePolicy::BestUod,
        trials: params.negative_trials,
        seed: params.seed ^ 0xb0,
        truthful_start: false,
        mode: DominanceMode::Auto,
        step_cap: None,
        limits: *limits,
    };
    let rep = batch_verify(&cfg)?;
    let mut r = SuiteReport::new("converge-negative-control");
    r.checked = rep.trials as u64;
    r.note(format!(
        "converged {}, cycles {}, truncated {}, errors {}",
        rep.converged, rep.cycles, rep.truncated, rep.errors
    ));
    for (trial, t) in rep.cycle_witnesses.iter().take(2) {
        r.witnesses.push(format!(
            "trial {} {:?} after {} moves: prefs {:?} initial {:?}",
            trial.index,
            t.status,
            t.moves.len(),
            trial.game.prefs.iter().map(|p| p.ranks().to_vec()).collect::<Vec<_>>(),
            trial.initial.iter().map(|a| a.to_string()).collect::<Vec<_>>()
        ));
    }
    r.failures = (rep.cycles == 0 || rep.errors > 0) as u64;
    Ok(r.finish())
}
