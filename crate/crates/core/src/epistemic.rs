//! Information sets, pivot-graph derivation, the sharp pivot property and
//! the topological predicates on pivot-graph structures.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::election::{
    allowed_ballots_capped, outcome_raw, Ballot, Candidate, PreferenceOrder, ScoreVector,
    VotingRule,
};
use crate::error::{Error, Result};
use crate::graph::{PivotGraph, PivotGraphStructure};
use crate::heuristics::{self, HeuristicKind};
use crate::metrics::{ball_capped, Metric, Radius};
use crate::Limits;

/// How many SPP violations are kept verbatim in a report.
const MAX_RECORDED_VIOLATIONS: usize = 32;

/// A set of states the voter deems possible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum InformationSet {
    Explicit(Vec<ScoreVector>),
    Ball {
        metric: Metric,
        center: ScoreVector,
        radius: Radius,
    },
}

impl InformationSet {
    /// Sorted, deduplicated states.
    pub fn materialize(&self, limits: &Limits) -> Result<Vec<ScoreVector>> {
        let mut states = match self {
            InformationSet::Explicit(states) => states.clone(),
            InformationSet::Ball {
                metric,
                center,
                radius,
            } => ball_capped(metric, center, *radius, limits.ball_cap)?,
        };
        states.sort();
        states.dedup();
        if states.is_empty() {
            return Err(Error::structural("information sets must be non-empty"));
        }
        Ok(states)
    }
}

/// Nested information sets `S_1 ⊆ … ⊆ S_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InformationStructure {
    pub levels: Vec<InformationSet>,
}

impl InformationStructure {
    pub fn new(levels: Vec<InformationSet>) -> Self {
        InformationStructure { levels }
    }

    pub fn concentric(metric: &Metric, center: &ScoreVector, radii: &[Radius]) -> Self {
        InformationStructure {
            levels: radii
                .iter()
                .map(|&radius| InformationSet::Ball {
                    metric: metric.clone(),
                    center: center.clone(),
                    radius,
                })
                .collect(),
        }
    }

    pub fn materialize(&self, limits: &Limits) -> Result<TaggedStates> {
        let levels = self
            .levels
            .iter()
            .map(|l| l.materialize(limits))
            .collect::<Result<Vec<_>>>()?;
        TaggedStates::from_levels(levels)
    }
}

/// The union of all levels, each state tagged with the first level that
/// contains it. Level `j` (0-based) is every state with tag `<= j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedStates {
    states: Vec<ScoreVector>,
    first_level: Vec<usize>,
    k: usize,
}

impl TaggedStates {
    pub fn from_levels(levels: Vec<Vec<ScoreVector>>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::structural("an information structure needs a level"));
        }
        let k = levels.len();
        let mut seen: HashSet<&ScoreVector> = HashSet::new();
        let mut states = Vec::new();
        let mut first_level = Vec::new();
        for (j, level) in levels.iter().enumerate() {
            if level.is_empty() {
                return Err(Error::structural(format!("level {} is empty", j + 1)));
            }
            let here: HashSet<&ScoreVector> = level.iter().collect();
            if let Some(missing) = seen.iter().find(|s| !here.contains(*s)) {
                return Err(Error::structural(format!(
                    "state {missing} of level {} is missing from level {}",
                    j,
                    j + 1
                )));
            }
            for s in level {
                if seen.insert(s) {
                    states.push(s.clone());
                    first_level.push(j);
                }
            }
        }
        Ok(TaggedStates {
            states,
            first_level,
            k,
        })
    }

    /// One enumeration of the outer ball, tagged by distance.
    pub fn concentric(
        metric: &Metric,
        center: &ScoreVector,
        radii: &[Radius],
        limits: &Limits,
    ) -> Result<Self> {
        let outer = radii
            .last()
            .ok_or_else(|| Error::config("at least one radius is needed"))?;
        if radii.windows(2).any(|w| w[0].vote_units > w[1].vote_units) {
            return Err(Error::config("radii must be non-decreasing"));
        }
        let states = ball_capped(metric, center, *outer, limits.ball_cap)?;
        let first_level = states
            .iter()
            .map(|s| {
                let d2 = crate::metrics::doubled_units(metric, center.scores(), s.scores());
                radii
                    .iter()
                    .position(|r| d2 <= 2 * r.vote_units)
                    .expect("inside the outer ball")
            })
            .collect();
        Ok(TaggedStates {
            states,
            first_level,
            k: radii.len(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn all(&self) -> &[ScoreVector] {
        &self.states
    }

    /// States in level `j` (0-based).
    pub fn level(&self, j: usize) -> impl Iterator<Item = &ScoreVector> + '_ {
        self.states
            .iter()
            .zip(&self.first_level)
            .filter(move |(_, &l)| l <= j)
            .map(|(s, _)| s)
    }

    pub fn level_vec(&self, j: usize) -> Vec<ScoreVector> {
        let mut v: Vec<ScoreVector> = self.level(j).cloned().collect();
        v.sort();
        v
    }

    pub(crate) fn tagged(&self) -> impl Iterator<Item = (&ScoreVector, usize)> + '_ {
        self.states.iter().zip(self.first_level.iter().copied())
    }
}

/// Per-level pivot graphs and (optionally) which winner pairs each ordered
/// ballot pair realizes somewhere in the level.
struct LevelScan {
    graphs: Vec<PivotGraph>,
    /// `realized[j][pair * words + w]`, bit `x * m + y` set when some state
    /// of level `j` gives winners `x` and `y` for the pair.
    realized: Option<Vec<Vec<u64>>>,
}

fn check_workload(states: usize, ballots: usize, limits: &Limits) -> Result<()> {
    let work = states as u64 * ballots as u64;
    if work > limits.enumeration_cap {
        return Err(Error::capacity("states x ballots", limits.enumeration_cap, work));
    }
    Ok(())
}

fn scan_levels(
    tagged: &TaggedStates,
    rule: &VotingRule,
    ballots: &[Ballot],
    with_pairs: bool,
    limits: &Limits,
) -> Result<LevelScan> {
    let m = rule.m;
    let k = tagged.k();
    check_workload(tagged.len(), ballots.len(), limits)?;
    if let Some(s) = tagged.all().iter().find(|s| s.len() != m) {
        return Err(Error::structural(format!("state {s} does not have {m} entries")));
    }
    let nb = ballots.len();
    let words = (m * m).div_ceil(64);
    let pair_len = nb * nb * words;

    struct Acc {
        masks: Vec<HashSet<u64>>,
        realized: Vec<Vec<u64>>,
    }
    let fresh = || Acc {
        masks: vec![HashSet::new(); k],
        realized: if with_pairs {
            vec![vec![0u64; pair_len]; k]
        } else {
            Vec::new()
        },
    };

    let tagged_vec: Vec<(&ScoreVector, usize)> = tagged.tagged().collect();
    let acc = tagged_vec
        .par_iter()
        .fold(fresh, |mut acc, &(s, level)| {
            let mut winners = Vec::with_capacity(nb);
            let mut mask = 0u64;
            for a in ballots {
                let w = outcome_raw(s.scores(), a.scores());
                winners.push(w);
                mask |= 1 << w;
            }
            acc.masks[level].insert(mask);
            if with_pairs && mask.count_ones() > 1 {
                let slot = &mut acc.realized[level];
                for (i, &wi) in winners.iter().enumerate() {
                    for (j, &wj) in winners.iter().enumerate() {
                        let bit = wi * m + wj;
                        slot[(i * nb + j) * words + bit / 64] |= 1 << (bit % 64);
                    }
                }
            }
            acc
        })
        .reduce(fresh, |mut a, b| {
            for (x, y) in a.masks.iter_mut().zip(b.masks) {
                x.extend(y);
            }
            if with_pairs {
                for (x, y) in a.realized.iter_mut().zip(b.realized) {
                    for (p, q) in x.iter_mut().zip(y) {
                        *p |= q;
                    }
                }
            }
            a
        });

    let mut graphs = Vec::with_capacity(k);
    let mut current = PivotGraph::empty(m);
    for masks in &acc.masks {
        for &mask in masks {
            add_clique(&mut current, mask);
        }
        graphs.push(current.clone());
    }
    let realized = with_pairs.then(|| {
        let mut levels = acc.realized;
        for j in 1..k {
            let (lo, hi) = levels.split_at_mut(j);
            for (p, q) in hi[0].iter_mut().zip(&lo[j - 1]) {
                *p |= q;
            }
        }
        levels
    });
    Ok(LevelScan { graphs, realized })
}

fn add_clique(g: &mut PivotGraph, mask: u64) {
    let members: Vec<usize> = (0..g.m()).filter(|c| mask >> c & 1 == 1).collect();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            g.add_edge(a, b);
        }
    }
}

/// Pivot graph of a set of states: an edge `{x, y}` iff some state admits
/// ballots electing `x` and `y` respectively.
pub fn pivot_graph(states: &[ScoreVector], rule: &VotingRule, limits: &Limits) -> Result<PivotGraph> {
    if states.is_empty() {
        return Err(Error::structural("information sets must be non-empty"));
    }
    let tagged = TaggedStates::from_levels(vec![states.to_vec()])?;
    let ballots = allowed_ballots_capped(rule, &limits.ballots)?;
    Ok(scan_levels(&tagged, rule, &ballots, false, limits)?.graphs.remove(0))
}

pub fn pivot_graph_of(set: &InformationSet, rule: &VotingRule, limits: &Limits) -> Result<PivotGraph> {
    pivot_graph(&set.materialize(limits)?, rule, limits)
}

/// Ballot pairs that would be pivotal for an edge, with a witness state.
pub fn pivotal_witness(
    states: &[ScoreVector],
    rule: &VotingRule,
    x: Candidate,
    y: Candidate,
    limits: &Limits,
) -> Result<Option<(ScoreVector, Ballot, Ballot)>> {
    let ballots = allowed_ballots_capped(rule, &limits.ballots)?;
    for s in states {
        let ax = ballots.iter().find(|a| outcome_raw(s.scores(), a.scores()) == x);
        let ay = ballots.iter().find(|a| outcome_raw(s.scores(), a.scores()) == y);
        if let (Some(ax), Some(ay)) = (ax, ay) {
            return Ok(Some((s.clone(), ax.clone(), ay.clone())));
        }
    }
    Ok(None)
}

/// Pivot graphs of every level of a tagged structure.
pub fn pivot_structure(
    tagged: &TaggedStates,
    rule: &VotingRule,
    limits: &Limits,
) -> Result<PivotGraphStructure> {
    let ballots = allowed_ballots_capped(rule, &limits.ballots)?;
    PivotGraphStructure::new(scan_levels(tagged, rule, &ballots, false, limits)?.graphs)
}

/// One failure of the sharp pivot property: at `level` (1-based) the edge
/// `{favored, other}` exists, the ballot pair widens the gap in favor of
/// `favored`, yet no state of the level makes the pair pivotal for
/// `(favored, other)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SppViolation {
    pub level: usize,
    pub favored: Candidate,
    pub other: Candidate,
    pub pair: (Ballot, Ballot),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SppReport {
    pub holds: bool,
    pub violation_count: usize,
    pub violations: Vec<SppViolation>,
}

pub fn spp_check(
    structure: &InformationStructure,
    rule: &VotingRule,
    limits: &Limits,
) -> Result<SppReport> {
    spp_check_tagged(&structure.materialize(limits)?, rule, limits)
}

pub fn spp_check_tagged(
    tagged: &TaggedStates,
    rule: &VotingRule,
    limits: &Limits,
) -> Result<SppReport> {
    let ballots = allowed_ballots_capped(rule, &limits.ballots)?;
    let scan = scan_levels(tagged, rule, &ballots, true, limits)?;
    Ok(spp_from_scan(&scan, rule.m, &ballots))
}

/// The sharp pivot property for an explicit ballot menu, e.g. one that
/// includes abstention.
pub fn spp_check_menu(
    tagged: &TaggedStates,
    rule: &VotingRule,
    menu: &[Ballot],
    limits: &Limits,
) -> Result<SppReport> {
    for a in menu {
        rule.check_ballot(a, true)?;
    }
    let scan = scan_levels(tagged, rule, menu, true, limits)?;
    Ok(spp_from_scan(&scan, rule.m, menu))
}

fn spp_from_scan(scan: &LevelScan, m: usize, ballots: &[Ballot]) -> SppReport {
    let realized = scan.realized.as_ref().expect("pair data requested");
    let nb = ballots.len();
    let words = (m * m).div_ceil(64);
    let mut violations = Vec::new();
    let mut count = 0;
    for (j, g) in scan.graphs.iter().enumerate() {
        for (a, b) in g.edges() {
            for (x, y) in [(a, b), (b, a)] {
                let bit = x * m + y;
                for (i, ai) in ballots.iter().enumerate() {
                    let gi = ai.get(x) as i64 - ai.get(y) as i64;
                    for (l, al) in ballots.iter().enumerate() {
                        let gl = al.get(x) as i64 - al.get(y) as i64;
                        if gi <= gl {
                            continue;
                        }
                        let word = realized[j][(i * nb + l) * words + bit / 64];
                        if word >> (bit % 64) & 1 == 0 {
                            count += 1;
                            if violations.len() < MAX_RECORDED_VIOLATIONS {
                                violations.push(SppViolation {
                                    level: j + 1,
                                    favored: x,
                                    other: y,
                                    pair: (ai.clone(), al.clone()),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    SppReport {
        holds: count == 0,
        violation_count: count,
        violations,
    }
}

/// True iff every level is a clique on its non-isolated vertices.
pub fn is_cliqued(structure: &PivotGraphStructure) -> bool {
    structure.levels().iter().all(PivotGraph::is_clique_on_active)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpwardClosure {
    pub holds: bool,
    /// Candidates from highest to lowest in the witnessing order.
    pub witness: Option<Vec<Candidate>>,
}

/// Whether `order` (highest first) makes every level upward closed: an edge
/// `{c, c'}` forces `{c, c''}` for every `c'' ≠ c` ranked above `c'`.
pub fn upward_closed_under(structure: &PivotGraphStructure, order: &[Candidate]) -> bool {
    let m = structure.m();
    let mut above = vec![0u64; m];
    let mut acc = 0u64;
    for &c in order {
        above[c] = acc;
        acc |= 1 << c;
    }
    structure.levels().iter().all(|g| {
        g.edges().into_iter().all(|(a, b)| {
            let need_a = above[b] & !(1 << a);
            let need_b = above[a] & !(1 << b);
            g.neighbors(a) & need_a == need_a && g.neighbors(b) & need_b == need_b
        })
    })
}

/// Checks a given order, or searches all orders when none is given
/// (only for `m <= 6`).
pub fn is_upward_closed(
    structure: &PivotGraphStructure,
    order: Option<&[Candidate]>,
) -> Result<UpwardClosure> {
    let m = structure.m();
    if let Some(order) = order {
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..m).collect::<Vec<_>>() {
            return Err(Error::structural("order must be a permutation of the candidates"));
        }
        let holds = upward_closed_under(structure, order);
        return Ok(UpwardClosure {
            holds,
            witness: holds.then(|| order.to_vec()),
        });
    }
    if m > 6 {
        return Err(Error::capacity("order search (candidates)", 6, m as u64));
    }
    let mut order: Vec<Candidate> = (0..m).collect();
    loop {
        if upward_closed_under(structure, &order) {
            return Ok(UpwardClosure {
                holds: true,
                witness: Some(order),
            });
        }
        if !next_permutation(&mut order) {
            return Ok(UpwardClosure {
                holds: false,
                witness: None,
            });
        }
    }
}

pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Everything a voter needs to decide: the others' tally, her own ballot,
/// her preferences and the rule.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VoterContext {
    pub state: ScoreVector,
    pub current: Ballot,
    pub prefs: PreferenceOrder,
    pub rule: VotingRule,
}

impl VoterContext {
    pub fn new(state: ScoreVector, current: Ballot, prefs: PreferenceOrder, rule: VotingRule) -> Result<Self> {
        if state.len() != rule.m || current.len() != rule.m || prefs.m() != rule.m {
            return Err(Error::structural("context components disagree on m"));
        }
        rule.check_ballot(&current, prefs.bias == crate::election::Bias::Lazy)?;
        Ok(VoterContext {
            state,
            current,
            prefs,
            rule,
        })
    }

    /// Context from a poll that includes the voter's own ballot.
    pub fn from_poll(poll: &ScoreVector, current: Ballot, prefs: PreferenceOrder, rule: VotingRule) -> Result<Self> {
        let state = poll.minus(&current)?;
        VoterContext::new(state, current, prefs, rule)
    }
}

/// Maps a voter context to a pivot-graph structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "model")]
pub enum EpistemicModel {
    /// Concentric balls around the others' state.
    DistanceBased { metric: Metric, radii: Vec<Radius> },
    /// The singleton `{s}`.
    FullInformation,
    /// The closed-form structure that accompanies a heuristic.
    Heuristic { heuristic: HeuristicKind },
}

impl EpistemicModel {
    pub fn is_concentric(&self) -> bool {
        match self {
            EpistemicModel::DistanceBased { radii, .. } => {
                radii.windows(2).all(|w| w[0].vote_units < w[1].vote_units)
            }
            _ => false,
        }
    }

    /// The information sets behind the model, when it has any.
    pub fn information(&self, ctx: &VoterContext, limits: &Limits) -> Result<Option<TaggedStates>> {
        match self {
            EpistemicModel::DistanceBased { metric, radii } => {
                TaggedStates::concentric(metric, &ctx.state, radii, limits).map(Some)
            }
            EpistemicModel::FullInformation => {
                TaggedStates::from_levels(vec![vec![ctx.state.clone()]]).map(Some)
            }
            EpistemicModel::Heuristic { .. } => Ok(None),
        }
    }
}

/// A derived structure, together with its backing sets when available.
#[derive(Debug, Clone)]
pub struct Beliefs {
    pub structure: PivotGraphStructure,
    pub sets: Option<TaggedStates>,
    /// Whether the backing sets satisfy the sharp pivot property.
    pub sharp: Option<bool>,
}

impl Beliefs {
    pub fn from_structure(structure: PivotGraphStructure) -> Self {
        Beliefs {
            structure,
            sets: None,
            sharp: None,
        }
    }
}

pub fn derive_structure(
    model: &EpistemicModel,
    ctx: &VoterContext,
    limits: &Limits,
) -> Result<PivotGraphStructure> {
    Ok(derive_beliefs(model, ctx, false, limits)?.structure)
}

/// Derives the structure; with `check_spp`, also evaluates the sharp pivot
/// property of the backing sets in the same pass.
pub fn derive_beliefs(
    model: &EpistemicModel,
    ctx: &VoterContext,
    check_spp: bool,
    limits: &Limits,
) -> Result<Beliefs> {
    match model.information(ctx, limits)? {
        Some(tagged) => {
            let ballots = allowed_ballots_capped(&ctx.rule, &limits.ballots)?;
            let scan = scan_levels(&tagged, &ctx.rule, &ballots, check_spp, limits)?;
            let sharp = check_spp.then(|| spp_from_scan(&scan, ctx.rule.m, &ballots).holds);
            Ok(Beliefs {
                structure: PivotGraphStructure::new(scan.graphs)?,
                sets: Some(tagged),
                sharp,
            })
        }
        None => {
            let EpistemicModel::Heuristic { heuristic } = model else {
                unreachable!("only heuristic models lack sets")
            };
            Ok(Beliefs::from_structure(heuristics::build_model(heuristic, ctx, limits)?))
        }
    }
}

/// Integer tallies for `n` voters from a distribution, by largest
/// remainder (ties to the lower index).
pub fn largest_remainder(p: &[f64], n: u64) -> Result<ScoreVector> {
    let sum: f64 = p.iter().sum();
    if p.is_empty() || p.iter().any(|&x| !(x >= 0.0)) || (sum - 1.0).abs() > 1e-9 {
        return Err(Error::config("distribution must be non-negative and sum to 1"));
    }
    let quotas: Vec<f64> = p.iter().map(|&x| x * n as f64).collect();
    let mut scores: Vec<u32> = quotas.iter().map(|q| q.floor() as u32).collect();
    let assigned: u64 = scores.iter().map(|&x| x as u64).sum();
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = quotas[a] - quotas[a].floor();
        let rb = quotas[b] - quotas[b].floor();
        rb.partial_cmp(&ra).unwrap().then(a.cmp(&b))
    });
    for &c in order.iter().take(n.saturating_sub(assigned) as usize) {
        scores[c] += 1;
    }
    Ok(ScoreVector::new(scores))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub n: u64,
    pub state: ScoreVector,
    pub report: Option<SppReport>,
    pub error: Option<String>,
}

/// Sharp-pivot check of the concentric structure around the rounded poll
/// for each population size. Radii are fractions of `n`.
pub fn spp_scan(
    p: &[f64],
    n_list: &[u64],
    metric: &crate::metrics::MetricKind,
    radii: &[num_rational::Ratio<u64>],
    rule: &VotingRule,
    limits: &Limits,
) -> Result<Vec<ScanEntry>> {
    if p.len() != rule.m {
        return Err(Error::structural("distribution and rule disagree on m"));
    }
    n_list
        .iter()
        .map(|&n| {
            let state = largest_remainder(p, n)?;
            let metric = Metric::new(metric.clone(), n);
            let radii = radii
                .iter()
                .map(|&r| Radius::fraction(r, n))
                .collect::<Result<Vec<_>>>()?;
            let result = TaggedStates::concentric(&metric, &state, &radii, limits)
                .and_then(|t| spp_check_tagged(&t, rule, limits));
            Ok(match result {
                Ok(report) => ScanEntry {
                    n,
                    state,
                    report: Some(report),
                    error: None,
                },
                Err(e @ Error::Capacity { .. }) => ScanEntry {
                    n,
                    state,
                    report: None,
                    error: Some(e.to_string()),
                },
                Err(e) => return Err(e),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::Metric;

    fn sv(v: &[u32]) -> ScoreVector {
        ScoreVector::new(v.to_vec())
    }

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn singleton_pivot_graphs() {
        let p5 = VotingRule::plurality(5);
        let g = pivot_graph(&[sv(&[29, 25, 22, 17, 6])], &p5, &limits()).unwrap();
        assert!(g.is_edgeless());
        let p3 = VotingRule::plurality(3);
        let g = pivot_graph(&[sv(&[5, 5, 0])], &p3, &limits()).unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);
        let g = pivot_graph(&[sv(&[9, 0, 0]), sv(&[0, 9, 0])], &p3, &limits()).unwrap();
        assert!(g.is_edgeless());
    }

    #[test]
    fn adding_states_never_removes_edges() {
        let rule = VotingRule::plurality(3);
        let all: Vec<ScoreVector> = (0..=4u32)
            .flat_map(|a| (0..=4 - a).map(move |b| sv(&[a, b, 4 - a - b])))
            .collect();
        let mut prev = PivotGraph::empty(3);
        for i in 1..=all.len() {
            let g = pivot_graph(&all[..i], &rule, &limits()).unwrap();
            assert!(prev.is_subgraph_of(&g));
            prev = g;
        }
    }

    #[test]
    fn spp_examples() {
        let rule = VotingRule::plurality(3);
        // every state with at most 4 votes; a fixed total fails on parity
        let all: Vec<ScoreVector> = (0..=4u32)
            .flat_map(|a| (0..=4 - a).flat_map(move |b| (0..=4 - a - b).map(move |c| sv(&[a, b, c]))))
            .collect();
        let fixed: Vec<ScoreVector> = all.iter().filter(|s| s.total() == 4).cloned().collect();
        let fixed = InformationStructure::new(vec![InformationSet::Explicit(fixed)]);
        assert!(!spp_check(&fixed, &rule, &limits()).unwrap().holds);
        let full = InformationStructure::new(vec![InformationSet::Explicit(all)]);
        assert!(spp_check(&full, &rule, &limits()).unwrap().holds);

        let single = InformationStructure::new(vec![InformationSet::Explicit(vec![sv(&[5, 5, 0])])]);
        let report = spp_check(&single, &rule, &limits()).unwrap();
        assert!(!report.holds);
        // voting for 2 instead of 0 widens the 1-vs-0 gap, but 0 still wins
        assert!(report.violations.iter().any(|v| v.favored == 1
            && v.other == 0
            && v.pair == (Ballot::single(3, 2), Ballot::single(3, 0))));

        let quiet = InformationStructure::new(vec![InformationSet::Explicit(vec![sv(&[9, 0, 0])])]);
        assert!(spp_check(&quiet, &rule, &limits()).unwrap().holds);
    }

    #[test]
    fn upward_closure_examples() {
        let path = PivotGraphStructure::single(PivotGraph::from_edges(3, &[(1, 2)]).unwrap());
        assert!(!is_upward_closed(&path, Some(&[0, 1, 2])).unwrap().holds);
        let found = is_upward_closed(&path, None).unwrap();
        assert!(found.holds);
        let clique = PivotGraphStructure::single(PivotGraph::complete(4));
        assert!(is_upward_closed(&clique, Some(&[3, 1, 0, 2])).unwrap().holds);
        let big = PivotGraphStructure::single(PivotGraph::empty(7));
        assert!(matches!(is_upward_closed(&big, None), Err(Error::Capacity { .. })));
    }

    #[test]
    fn radius_zero_is_the_center() {
        let ctx = VoterContext::new(
            sv(&[5, 5, 0]),
            Ballot::single(3, 2),
            PreferenceOrder::strict(&[0, 1, 2]).unwrap(),
            VotingRule::plurality(3),
        )
        .unwrap();
        let model = EpistemicModel::DistanceBased {
            metric: Metric::emd(10),
            radii: vec![Radius::votes(0, 10)],
        };
        let s = derive_structure(&model, &ctx, &limits()).unwrap();
        assert_eq!(s.k(), 1);
        assert_eq!(s.levels()[0], pivot_graph(&[sv(&[5, 5, 0])], &ctx.rule, &limits()).unwrap());
    }

    #[test]
    fn largest_remainder_rounding() {
        assert_eq!(largest_remainder(&[1.0 / 3.0; 3], 10).unwrap(), sv(&[4, 3, 3]));
        assert_eq!(largest_remainder(&[0.5, 0.25, 0.25], 6).unwrap(), sv(&[3, 2, 1]));
        assert_eq!(largest_remainder(&[0.29, 0.26, 0.22, 0.17, 0.06], 100).unwrap(), sv(&[29, 26, 22, 17, 6]));
        assert!(largest_remainder(&[0.5, 0.6], 10).is_err());
    }

    #[test]
    fn permutation_successor_enumerates_all() {
        let mut v = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 24);
    }
}
