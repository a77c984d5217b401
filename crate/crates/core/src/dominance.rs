//! Ordinal dominance: the graph-based check, the set-semantics oracle, OD
//! and UOD sets, and equilibrium verification.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::election::{
    ballot_menu, compare, favored_ballot, outcome_raw, Ballot, Bias, Candidate, PreferenceOrder,
    ScoreVector, VotingRule,
};
use crate::epistemic::{
    derive_beliefs, EpistemicModel, InformationSet, InformationStructure, TaggedStates,
    VoterContext,
};
use crate::error::{Error, Result};
use crate::graph::PivotGraphStructure;
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelTrace {
    pub safe: i8,
    pub pivot: i8,
    pub dom: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominanceVerdict {
    pub dominates: bool,
    /// First certifying level, 1-based.
    pub level: Option<usize>,
    pub trace: Vec<LevelTrace>,
    /// Dominance comes only from the tie-breaking bias.
    pub by_bias: bool,
}

fn check_shapes(a_new: &Ballot, a_cur: &Ballot, prefs: &PreferenceOrder, m: usize) -> Result<()> {
    if a_new.len() != m || a_cur.len() != m || prefs.m() != m {
        return Err(Error::structural(format!(
            "ballots ({}, {}) and preferences ({}) must have {m} entries",
            a_new.len(),
            a_cur.len(),
            prefs.m()
        )));
    }
    Ok(())
}

/// Sign of the change `a_new` brings to the `c` vs `d` contest, from the
/// voter's point of view.
fn effect(a_new: &[u32], a_cur: &[u32], prefs: &PreferenceOrder, c: Candidate, d: Candidate) -> i8 {
    let diff = a_new[c] as i64 + a_cur[d] as i64 - a_cur[c] as i64 - a_new[d] as i64;
    (diff.signum() * prefs.indicator(c, d) as i64) as i8
}

/// Does `a_new` ordinally dominate `a_cur` under the structure?
pub fn od_check(
    a_new: &Ballot,
    a_cur: &Ballot,
    prefs: &PreferenceOrder,
    structure: &PivotGraphStructure,
) -> Result<DominanceVerdict> {
    check_shapes(a_new, a_cur, prefs, structure.m())?;
    let (x, y) = (a_new.scores(), a_cur.scores());
    let mut trace = Vec::with_capacity(structure.k());
    let mut level = None;
    for (j, g) in structure.levels().iter().enumerate() {
        let mut safe = 0i8;
        let mut pivot = 0i8;
        let mut first = true;
        for (a, b) in g.edges() {
            let e = effect(x, y, prefs, a, b);
            if first {
                (safe, pivot, first) = (e, e, false);
            } else {
                safe = safe.min(e);
                pivot = pivot.max(e);
            }
        }
        let dom = (safe + pivot >= 1) as i8;
        if dom == 1 && level.is_none() {
            level = Some(j + 1);
        }
        trace.push(LevelTrace { safe, pivot, dom });
    }
    Ok(DominanceVerdict {
        dominates: level.is_some(),
        level,
        trace,
        by_bias: false,
    })
}

/// As [`od_check`], with a tie-breaking bias: the favored ballot also
/// dominates any other ballot that changes no contest on the outermost
/// graph.
pub fn od_check_biased(
    a_new: &Ballot,
    a_cur: &Ballot,
    prefs: &PreferenceOrder,
    structure: &PivotGraphStructure,
    favored: Option<&Ballot>,
) -> Result<DominanceVerdict> {
    let mut verdict = od_check(a_new, a_cur, prefs, structure)?;
    if verdict.dominates || prefs.bias == Bias::None {
        return Ok(verdict);
    }
    if let Some(f) = favored {
        let neutral = verdict
            .trace
            .last()
            .is_some_and(|t| t.safe == 0 && t.pivot == 0);
        if a_new == f && a_cur != f && neutral {
            verdict.dominates = true;
            verdict.level = Some(1);
            verdict.by_bias = true;
        }
    }
    Ok(verdict)
}

/// Relation of two ballots over one information set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SetRelation {
    Dominates,
    DominatedBy,
    Indifferent,
    Incomparable,
}

fn relation_of(better: bool, worse: bool) -> SetRelation {
    match (better, worse) {
        (true, false) => SetRelation::Dominates,
        (false, true) => SetRelation::DominatedBy,
        (false, false) => SetRelation::Indifferent,
        (true, true) => SetRelation::Incomparable,
    }
}

fn compare_at(
    s: &ScoreVector,
    a_new: &Ballot,
    a_cur: &Ballot,
    prefs: &PreferenceOrder,
    favored: Option<&Ballot>,
) -> Ordering {
    let wn = outcome_raw(s.scores(), a_new.scores());
    let wc = outcome_raw(s.scores(), a_cur.scores());
    compare(prefs, favored, (wn, a_new), (wc, a_cur))
}

/// Literal set dominance by enumerating every state of the set.
pub fn sdom_oracle(
    a_new: &Ballot,
    a_cur: &Ballot,
    prefs: &PreferenceOrder,
    set: &InformationSet,
    rule: &VotingRule,
    limits: &Limits,
) -> Result<SetRelation> {
    check_shapes(a_new, a_cur, prefs, rule.m)?;
    let lazy = prefs.bias == Bias::Lazy;
    rule.check_ballot(a_new, lazy)?;
    rule.check_ballot(a_cur, lazy)?;
    let favored = favored_ballot(rule, prefs);
    let states = set.materialize(limits)?;
    let (mut better, mut worse) = (false, false);
    for s in &states {
        match compare_at(s, a_new, a_cur, prefs, favored.as_ref()) {
            Ordering::Greater => better = true,
            Ordering::Less => worse = true,
            Ordering::Equal => {}
        }
    }
    Ok(relation_of(better, worse))
}

/// Dominance by the definition: some level on which `a_new` set-dominates.
pub fn od_oracle(
    a_new: &Ballot,
    a_cur: &Ballot,
    prefs: &PreferenceOrder,
    structure: &InformationStructure,
    rule: &VotingRule,
    limits: &Limits,
) -> Result<bool> {
    for level in &structure.levels {
        if sdom_oracle(a_new, a_cur, prefs, level, rule, limits)? == SetRelation::Dominates {
            return Ok(true);
        }
    }
    Ok(false)
}

/// How dominance between two ballots is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DominanceMode {
    /// Always the graph-based check.
    Graph,
    /// Literal set semantics; needs information sets.
    Exact,
    /// The graph check when the sets have the sharp pivot property (or
    /// there are no sets), literal set semantics otherwise.
    #[default]
    Auto,
}

/// Outcomes of every menu ballot on every state, with level tags.
struct OutcomeTable {
    k: usize,
    tags: Vec<usize>,
    /// `outcomes[state * menu + ballot]`
    outcomes: Vec<u8>,
    menu: usize,
}

impl OutcomeTable {
    fn build(sets: &TaggedStates, menu: &[Ballot], limits: &Limits) -> Result<Self> {
        let work = sets.len() as u64 * menu.len() as u64;
        if work > limits.enumeration_cap {
            return Err(Error::capacity("states x ballots", limits.enumeration_cap, work));
        }
        let mut tags = Vec::with_capacity(sets.len());
        let mut outcomes = Vec::with_capacity(sets.len() * menu.len());
        for (s, tag) in sets.tagged() {
            tags.push(tag);
            outcomes.extend(menu.iter().map(|a| outcome_raw(s.scores(), a.scores()) as u8));
        }
        Ok(OutcomeTable {
            k: sets.k(),
            tags,
            outcomes,
            menu: menu.len(),
        })
    }

    /// First level (1-based) on which ballot `x` set-dominates ballot `y`.
    fn dominance_level(
        &self,
        x: usize,
        y: usize,
        menu: &[Ballot],
        prefs: &PreferenceOrder,
        favored: Option<&Ballot>,
    ) -> Option<usize> {
        let mut better = vec![false; self.k];
        let mut worse = vec![false; self.k];
        for (i, &tag) in self.tags.iter().enumerate() {
            let row = &self.outcomes[i * self.menu..(i + 1) * self.menu];
            let wx = row[x] as Candidate;
            let wy = row[y] as Candidate;
            match compare(prefs, favored, (wx, &menu[x]), (wy, &menu[y])) {
                Ordering::Greater => better[tag] = true,
                Ordering::Less => worse[tag] = true,
                Ordering::Equal => {}
            }
        }
        let (mut b, mut w) = (false, false);
        for j in 0..self.k {
            b |= better[j];
            w |= worse[j];
            if w {
                return None;
            }
            if b {
                return Some(j + 1);
            }
        }
        None
    }
}

/// Pairwise dominance among the ballot menu of one voter context.
pub struct DominanceOracle {
    menu: Vec<Ballot>,
    current: usize,
    prefs: PreferenceOrder,
    favored: Option<Ballot>,
    structure: PivotGraphStructure,
    table: Option<OutcomeTable>,
    sharp: Option<bool>,
}

impl DominanceOracle {
    pub fn new(
        ctx: &VoterContext,
        model: &EpistemicModel,
        mode: DominanceMode,
        limits: &Limits,
    ) -> Result<Self> {
        let menu = ballot_menu(&ctx.rule, ctx.prefs.bias, &limits.ballots)?;
        let current = menu
            .iter()
            .position(|a| *a == ctx.current)
            .ok_or_else(|| Error::RuleViolation {
                rule: ctx.rule.to_string(),
                ballot: ctx.current.scores().to_vec(),
            })?;
        let beliefs = derive_beliefs(model, ctx, mode == DominanceMode::Auto, limits)?;
        let use_table = match mode {
            DominanceMode::Graph => false,
            DominanceMode::Exact => {
                if beliefs.sets.is_none() {
                    return Err(Error::config(
                        "exact dominance needs a model with information sets",
                    ));
                }
                true
            }
            DominanceMode::Auto => beliefs.sharp == Some(false),
        };
        let table = match (&beliefs.sets, use_table) {
            (Some(sets), true) => Some(OutcomeTable::build(sets, &menu, limits)?),
            _ => None,
        };
        Ok(DominanceOracle {
            favored: favored_ballot(&ctx.rule, &ctx.prefs),
            menu,
            current,
            prefs: ctx.prefs.clone(),
            structure: beliefs.structure,
            table,
            sharp: beliefs.sharp,
        })
    }

    pub fn menu(&self) -> &[Ballot] {
        &self.menu
    }

    pub fn structure(&self) -> &PivotGraphStructure {
        &self.structure
    }

    /// Whether the backing sets had the sharp pivot property, when checked.
    pub fn sharp(&self) -> Option<bool> {
        self.sharp
    }

    pub fn uses_set_semantics(&self) -> bool {
        self.table.is_some()
    }

    /// First level on which menu ballot `x` dominates menu ballot `y`.
    pub fn dominance_level(&self, x: usize, y: usize) -> Option<usize> {
        if x == y {
            return None;
        }
        match &self.table {
            Some(t) => t.dominance_level(x, y, &self.menu, &self.prefs, self.favored.as_ref()),
            None => od_check_biased(
                &self.menu[x],
                &self.menu[y],
                &self.prefs,
                &self.structure,
                self.favored.as_ref(),
            )
            .expect("menu ballots match the structure")
            .level,
        }
    }

    /// Menu indices of ballots dominating the current one, with levels.
    pub fn od_indices(&self) -> Vec<(usize, usize)> {
        (0..self.menu.len())
            .into_par_iter()
            .filter_map(|x| self.dominance_level(x, self.current).map(|l| (x, l)))
            .collect()
    }

    pub fn uod_indices(&self) -> Vec<(usize, usize)> {
        self.od_indices()
            .into_par_iter()
            .filter(|&(x, _)| (0..self.menu.len()).all(|y| self.dominance_level(y, x).is_none()))
            .collect()
    }

    pub fn od_set(&self) -> Vec<Ballot> {
        self.od_indices().into_iter().map(|(x, _)| self.menu[x].clone()).collect()
    }

    pub fn uod_set(&self) -> Vec<Ballot> {
        self.uod_indices().into_iter().map(|(x, _)| self.menu[x].clone()).collect()
    }
}

/// Ballots that ordinally dominate the current one, in menu order.
pub fn od_set(ctx: &VoterContext, model: &EpistemicModel, limits: &Limits) -> Result<Vec<Ballot>> {
    od_set_with(ctx, model, DominanceMode::Auto, limits)
}

pub fn od_set_with(
    ctx: &VoterContext,
    model: &EpistemicModel,
    mode: DominanceMode,
    limits: &Limits,
) -> Result<Vec<Ballot>> {
    Ok(DominanceOracle::new(ctx, model, mode, limits)?.od_set())
}

/// Members of the OD set that no ballot dominates.
pub fn uod_set(ctx: &VoterContext, model: &EpistemicModel, limits: &Limits) -> Result<Vec<Ballot>> {
    uod_set_with(ctx, model, DominanceMode::Auto, limits)
}

pub fn uod_set_with(
    ctx: &VoterContext,
    model: &EpistemicModel,
    mode: DominanceMode,
    limits: &Limits,
) -> Result<Vec<Ballot>> {
    Ok(DominanceOracle::new(ctx, model, mode, limits)?.uod_set())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deviation {
    pub voter: usize,
    pub ballot: Ballot,
    pub level: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquilibriumReport {
    pub is_equilibrium: bool,
    pub deviations: Vec<Deviation>,
}

/// Sum of all ballots in a profile.
pub fn aggregate(profile: &[Ballot], m: usize) -> Result<ScoreVector> {
    let mut s = ScoreVector::zeros(m);
    for a in profile {
        s = s.plus(a)?;
    }
    Ok(s)
}

/// The context of voter `i`: everyone else's tally and her own ballot.
pub fn voter_context(
    profile: &[Ballot],
    aggregate: &ScoreVector,
    prefs: &PreferenceOrder,
    rule: &VotingRule,
    i: usize,
) -> Result<VoterContext> {
    VoterContext::from_poll(aggregate, profile[i].clone(), prefs.clone(), *rule)
}

pub fn is_od_equilibrium(
    profile: &[Ballot],
    prefs: &[PreferenceOrder],
    models: &[EpistemicModel],
    rule: &VotingRule,
    mode: DominanceMode,
    limits: &Limits,
) -> Result<EquilibriumReport> {
    if profile.len() != prefs.len() || profile.len() != models.len() {
        return Err(Error::structural("profile, preferences and models differ in length"));
    }
    let total = aggregate(profile, rule.m)?;
    let deviations = (0..profile.len())
        .into_par_iter()
        .map(|i| {
            let ctx = voter_context(profile, &total, &prefs[i], rule, i)?;
            let oracle = DominanceOracle::new(&ctx, &models[i], mode, limits)?;
            Ok(oracle.od_indices().first().map(|&(x, level)| Deviation {
                voter: i,
                ballot: oracle.menu()[x].clone(),
                level,
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    Ok(EquilibriumReport {
        is_equilibrium: deviations.is_empty(),
        deviations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::PivotGraph;

    fn fig2() -> PivotGraphStructure {
        let h2 = PivotGraph::from_edges(5, &[(0, 1)]).unwrap();
        let h3 = PivotGraph::from_edges(5, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let mut h4 = PivotGraph::complete(5);
        h4 = PivotGraph::from_edges(
            5,
            &h4.edges().into_iter().filter(|&e| e != (3, 4)).collect::<Vec<_>>(),
        )
        .unwrap();
        PivotGraphStructure::new(vec![PivotGraph::empty(5), h2, h3, h4]).unwrap()
    }

    fn prefs() -> PreferenceOrder {
        // e > d > c > b > w with w,b,c,d,e = 0..5
        PreferenceOrder::strict(&[4, 3, 2, 1, 0]).unwrap()
    }

    #[test]
    fn c_dominates_e_at_level_three() {
        let v = od_check(&Ballot::single(5, 2), &Ballot::single(5, 4), &prefs(), &fig2()).unwrap();
        assert!(v.dominates);
        assert_eq!(v.level, Some(3));
        assert_eq!(v.trace[0], LevelTrace { safe: 0, pivot: 0, dom: 0 });
    }

    #[test]
    fn b_dominates_all_other_singles_at_level_two() {
        for other in [0, 2, 3, 4] {
            let v = od_check(&Ballot::single(5, 1), &Ballot::single(5, other), &prefs(), &fig2()).unwrap();
            assert_eq!(v.level, Some(2), "b vs {other}");
        }
    }

    #[test]
    fn irreflexive_and_shape_checked() {
        let a = Ballot::single(5, 3);
        assert!(!od_check(&a, &a, &prefs(), &fig2()).unwrap().dominates);
        assert!(od_check(&Ballot::single(4, 0), &a, &prefs(), &fig2()).is_err());
    }

    #[test]
    fn indifference_has_no_effect() {
        let p = PreferenceOrder::from_classes(&[vec![0, 1], vec![2]]).unwrap();
        let s = PivotGraphStructure::single(PivotGraph::from_edges(3, &[(0, 1)]).unwrap());
        assert!(!od_check(&Ballot::single(3, 0), &Ballot::single(3, 1), &p, &s).unwrap().dominates);
    }

    #[test]
    fn oracle_relations() {
        let rule = VotingRule::plurality(3);
        let p = PreferenceOrder::strict(&[1, 0, 2]).unwrap();
        let single = |v: Vec<u32>| InformationSet::Explicit(vec![ScoreVector::new(v)]);
        let l = Limits::default();
        let r = sdom_oracle(&Ballot::single(3, 1), &Ballot::single(3, 0), &p, &single(vec![5, 5, 0]), &rule, &l);
        assert_eq!(r.unwrap(), SetRelation::Dominates);
        let r = sdom_oracle(&Ballot::single(3, 1), &Ballot::single(3, 2), &p, &single(vec![9, 0, 0]), &rule, &l);
        assert_eq!(r.unwrap(), SetRelation::Indifferent);
        let two = InformationSet::Explicit(vec![
            ScoreVector::new(vec![5, 5, 0]),
            ScoreVector::new(vec![0, 4, 4]),
        ]);
        // voting 0 loses 1 vs 0 in the first state, but beats 2 in the second
        let r = sdom_oracle(&Ballot::single(3, 1), &Ballot::single(3, 0), &p, &two, &rule, &l).unwrap();
        assert_eq!(r, SetRelation::Dominates);
        let r = sdom_oracle(&Ballot::single(3, 2), &Ballot::single(3, 1), &p, &two, &rule, &l).unwrap();
        assert_eq!(r, SetRelation::DominatedBy);
        let mixed = InformationSet::Explicit(vec![
            ScoreVector::new(vec![4, 5, 0]),
            ScoreVector::new(vec![0, 5, 5]),
        ]);
        let r = sdom_oracle(&Ballot::single(3, 0), &Ballot::single(3, 2), &p, &mixed, &rule, &l).unwrap();
        assert_eq!(r, SetRelation::Incomparable);
    }

    #[test]
    fn auto_mode_falls_back_to_sets_without_spp() {
        let rule = VotingRule::plurality(3);
        let ctx = VoterContext::new(
            ScoreVector::new(vec![5, 5, 0]),
            Ballot::single(3, 0),
            PreferenceOrder::strict(&[1, 0, 2]).unwrap(),
            rule,
        )
        .unwrap();
        let l = Limits::default();
        let model = EpistemicModel::FullInformation;
        let graph = od_set_with(&ctx, &model, DominanceMode::Graph, &l).unwrap();
        assert_eq!(graph, vec![Ballot::single(3, 1), Ballot::single(3, 2)]);
        assert_eq!(od_set(&ctx, &model, &l).unwrap(), vec![Ballot::single(3, 1)]);
        assert_eq!(uod_set(&ctx, &model, &l).unwrap(), vec![Ballot::single(3, 1)]);
    }

    #[test]
    fn truth_bias_prefers_the_sincere_ballot() {
        let rule = VotingRule::plurality(3);
        let p = PreferenceOrder::strict(&[2, 0, 1]).unwrap().with_bias(Bias::Truth);
        let s = PivotGraphStructure::single(PivotGraph::empty(3));
        let truthful = Ballot::single(3, 2);
        let v = od_check_biased(&truthful, &Ballot::single(3, 0), &p, &s, Some(&truthful)).unwrap();
        assert!(v.dominates && v.by_bias);
        let v = od_check_biased(&Ballot::single(3, 0), &truthful, &p, &s, Some(&truthful)).unwrap();
        assert!(!v.dominates);
        let ctx = VoterContext::new(ScoreVector::new(vec![9, 0, 0]), Ballot::single(3, 1), p, rule).unwrap();
        let uod = uod_set(&ctx, &EpistemicModel::FullInformation, &Limits::default()).unwrap();
        assert_eq!(uod, vec![truthful]);
    }
}
