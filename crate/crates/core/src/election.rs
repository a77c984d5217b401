//! Candidates, ballots, score-based voting rules and preference orders.
//!
//! Every rule here is score based: a ballot is a vector of non-negative
//! integer scores drawn from the rule's allowed set, the tally is the
//! component-wise sum, and the winner is the highest tally with ties going
//! to the lowest candidate index.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Candidates are dense indices `0..m`. Index order is the tie-break order.
pub type Candidate = usize;

/// Largest number of candidates supported by the bitmask graph encoding.
pub const MAX_CANDIDATES: usize = 64;

/// Aggregate per-candidate tallies.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ScoreVector {
    scores: Vec<u32>,
    total: u64,
}

impl ScoreVector {
    pub fn new(scores: Vec<u32>) -> Self {
        let total = scores.iter().map(|&x| x as u64).sum();
        ScoreVector { scores, total }
    }

    pub fn zeros(m: usize) -> Self {
        ScoreVector::new(vec![0; m])
    }

    pub fn scores(&self) -> &[u32] {
        &self.scores
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn get(&self, c: Candidate) -> u32 {
        self.scores[c]
    }

    /// Component-wise sum with a ballot.
    pub fn plus(&self, ballot: &Ballot) -> Result<ScoreVector> {
        if ballot.len() != self.len() {
            return Err(Error::structural(format!(
                "ballot has {} entries, state has {}",
                ballot.len(),
                self.len()
            )));
        }
        Ok(ScoreVector::new(
            self.scores
                .iter()
                .zip(ballot.scores())
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    /// Component-wise difference; fails if any entry would go negative.
    pub fn minus(&self, ballot: &Ballot) -> Result<ScoreVector> {
        if ballot.len() != self.len() {
            return Err(Error::structural("length mismatch in subtraction"));
        }
        let mut out = Vec::with_capacity(self.len());
        for (c, (a, b)) in self.scores.iter().zip(ballot.scores()).enumerate() {
            out.push(a.checked_sub(*b).ok_or_else(|| {
                Error::structural(format!("subtracting ballot makes candidate {c} negative"))
            })?);
        }
        Ok(ScoreVector::new(out))
    }

    /// Candidates sorted by decreasing score, ties by ascending index.
    pub fn score_order(&self) -> Vec<Candidate> {
        let mut order: Vec<Candidate> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.scores[b].cmp(&self.scores[a]).then(a.cmp(&b)));
        order
    }
}

impl From<Vec<u32>> for ScoreVector {
    fn from(v: Vec<u32>) -> Self {
        ScoreVector::new(v)
    }
}

impl fmt::Display for ScoreVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.scores.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// One voter's score contribution. The all-zero ballot is abstention.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ballot(Vec<u32>);

impl Ballot {
    pub fn new(scores: Vec<u32>) -> Self {
        Ballot(scores)
    }

    pub fn abstain(m: usize) -> Self {
        Ballot(vec![0; m])
    }

    /// Unit vector for `c`: a Plurality vote.
    pub fn single(m: usize, c: Candidate) -> Self {
        let mut v = vec![0; m];
        v[c] = 1;
        Ballot(v)
    }

    /// All ones except a zero at `c`: a Veto vote.
    pub fn veto(m: usize, c: Candidate) -> Self {
        let mut v = vec![1; m];
        v[c] = 0;
        Ballot(v)
    }

    pub fn scores(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, c: Candidate) -> u32 {
        self.0[c]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_abstain(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// The candidate of a unit-vector ballot, if it is one.
    pub fn as_single(&self) -> Option<Candidate> {
        let mut found = None;
        for (c, &x) in self.0.iter().enumerate() {
            match x {
                0 => {}
                1 if found.is_none() => found = Some(c),
                _ => return None,
            }
        }
        found
    }
}

impl fmt::Display for Ballot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleKind {
    Plurality,
    Veto,
    Borda,
    Approval,
    KApproval(usize),
}

/// Enumeration bounds for ballot sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallotCaps {
    pub borda_max_m: usize,
    pub approval_max_m: usize,
}

impl Default for BallotCaps {
    fn default() -> Self {
        BallotCaps {
            borda_max_m: 6,
            approval_max_m: 20,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VotingRule {
    pub kind: RuleKind,
    pub m: usize,
}

impl fmt::Display for VotingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RuleKind::Plurality => write!(f, "plurality(m={})", self.m),
            RuleKind::Veto => write!(f, "veto(m={})", self.m),
            RuleKind::Borda => write!(f, "borda(m={})", self.m),
            RuleKind::Approval => write!(f, "approval(m={})", self.m),
            RuleKind::KApproval(k) => write!(f, "{k}-approval(m={})", self.m),
        }
    }
}

impl VotingRule {
    pub fn new(kind: RuleKind, m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::config(format!("need at least 2 candidates, got {m}")));
        }
        if m > MAX_CANDIDATES {
            return Err(Error::capacity("number of candidates", MAX_CANDIDATES as u64, m as u64));
        }
        if let RuleKind::KApproval(k) = kind {
            if k == 0 || k >= m {
                return Err(Error::config(format!("k-approval needs 0 < k < m, got k={k}, m={m}")));
            }
        }
        Ok(VotingRule { kind, m })
    }

    pub fn plurality(m: usize) -> Self {
        VotingRule::new(RuleKind::Plurality, m).expect("valid plurality size")
    }

    pub fn veto(m: usize) -> Self {
        VotingRule::new(RuleKind::Veto, m).expect("valid veto size")
    }

    pub fn borda(m: usize) -> Self {
        VotingRule::new(RuleKind::Borda, m).expect("valid borda size")
    }

    pub fn approval(m: usize) -> Self {
        VotingRule::new(RuleKind::Approval, m).expect("valid approval size")
    }

    /// Largest score any ballot can give a candidate.
    pub fn max_score(&self) -> u32 {
        match self.kind {
            RuleKind::Borda => self.m as u32 - 1,
            _ => 1,
        }
    }

    /// Membership in the allowed set, with abstention admitted on request.
    pub fn is_valid_ballot(&self, ballot: &Ballot, allow_abstain: bool) -> bool {
        if ballot.len() != self.m {
            return false;
        }
        if allow_abstain && ballot.is_abstain() {
            return true;
        }
        let s = ballot.scores();
        let ones = s.iter().filter(|&&x| x == 1).count();
        let binary = s.iter().all(|&x| x <= 1);
        match self.kind {
            RuleKind::Plurality => binary && ones == 1,
            RuleKind::Veto => binary && ones == self.m - 1,
            RuleKind::Approval => binary,
            RuleKind::KApproval(k) => binary && ones == k,
            RuleKind::Borda => {
                let mut seen = vec![false; self.m];
                for &x in s {
                    let x = x as usize;
                    if x >= self.m || seen[x] {
                        return false;
                    }
                    seen[x] = true;
                }
                true
            }
        }
    }

    pub(crate) fn check_ballot(&self, ballot: &Ballot, allow_abstain: bool) -> Result<()> {
        if self.is_valid_ballot(ballot, allow_abstain) {
            Ok(())
        } else {
            Err(Error::RuleViolation {
                rule: self.to_string(),
                ballot: ballot.scores().to_vec(),
            })
        }
    }
}

/// Exact enumeration of the allowed ballot set, in a fixed canonical order.
pub fn allowed_ballots(rule: &VotingRule) -> Result<Vec<Ballot>> {
    allowed_ballots_capped(rule, &BallotCaps::default())
}

pub fn allowed_ballots_capped(rule: &VotingRule, caps: &BallotCaps) -> Result<Vec<Ballot>> {
    let m = rule.m;
    match rule.kind {
        RuleKind::Plurality => Ok((0..m).map(|c| Ballot::single(m, c)).collect()),
        RuleKind::Veto => Ok((0..m).map(|c| Ballot::veto(m, c)).collect()),
        RuleKind::Borda => {
            if m > caps.borda_max_m {
                return Err(Error::capacity(
                    "borda ballot enumeration (candidates)",
                    caps.borda_max_m as u64,
                    m as u64,
                ));
            }
            let mut out = Vec::new();
            let mut current = Vec::with_capacity(m);
            let mut used = vec![false; m];
            permutations(m, &mut current, &mut used, &mut out);
            Ok(out)
        }
        RuleKind::Approval | RuleKind::KApproval(_) => {
            if m > caps.approval_max_m {
                return Err(Error::capacity(
                    "approval ballot enumeration (candidates)",
                    caps.approval_max_m as u64,
                    m as u64,
                ));
            }
            let want = match rule.kind {
                RuleKind::KApproval(k) => Some(k as u32),
                _ => None,
            };
            Ok((0u64..1 << m)
                .filter(|mask| want.is_none_or(|k| mask.count_ones() == k))
                .map(|mask| Ballot((0..m).map(|c| ((mask >> c) & 1) as u32).collect()))
                .collect())
        }
    }
}

fn permutations(m: usize, current: &mut Vec<u32>, used: &mut [bool], out: &mut Vec<Ballot>) {
    if current.len() == m {
        out.push(Ballot(current.clone()));
        return;
    }
    for v in 0..m {
        if !used[v] {
            used[v] = true;
            current.push(v as u32);
            permutations(m, current, used, out);
            current.pop();
            used[v] = false;
        }
    }
}

/// The ballot set a voter actually chooses from: the rule's set, plus
/// abstention appended last when the voter is lazy-biased.
pub fn ballot_menu(rule: &VotingRule, bias: Bias, caps: &BallotCaps) -> Result<Vec<Ballot>> {
    let mut ballots = allowed_ballots_capped(rule, caps)?;
    if bias == Bias::Lazy {
        ballots.push(Ballot::abstain(rule.m));
    }
    Ok(ballots)
}

/// Highest score wins; ties go to the lowest index.
pub fn winner(s: &ScoreVector) -> Result<Candidate> {
    if s.is_empty() {
        return Err(Error::structural("winner of an empty score vector"));
    }
    Ok(argmax(s.scores()))
}

pub(crate) fn argmax(scores: &[u32]) -> Candidate {
    let mut best = 0;
    for c in 1..scores.len() {
        if scores[c] > scores[best] {
            best = c;
        }
    }
    best
}

/// Winner of `s + a` without validation or allocation.
#[inline]
pub(crate) fn outcome_raw(s: &[u32], a: &[u32]) -> Candidate {
    let mut best = 0;
    let mut best_score = s[0] + a[0];
    for c in 1..s.len() {
        let x = s[c] + a[c];
        if x > best_score {
            best = c;
            best_score = x;
        }
    }
    best
}

/// The winner when a voter casts `a` into the others' state `s`.
pub fn outcome(rule: &VotingRule, s: &ScoreVector, a: &Ballot) -> Result<Candidate> {
    if s.len() != rule.m {
        return Err(Error::structural(format!(
            "state has {} entries, rule has {} candidates",
            s.len(),
            rule.m
        )));
    }
    rule.check_ballot(a, true)?;
    Ok(outcome_raw(s.scores(), a.scores()))
}

/// Secondary preference over actions among outcome-equivalent ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bias {
    #[default]
    None,
    Truth,
    Lazy,
}

/// A weak order over candidates: lower rank is better, equal ranks are
/// indifferent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PreferenceOrder {
    ranks: Vec<u32>,
    pub bias: Bias,
}

impl PreferenceOrder {
    /// Ranks are renumbered densely from 0, so equal orders compare equal.
    pub fn from_ranks(ranks: Vec<u32>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::structural("empty preference order"));
        }
        let mut levels = ranks.clone();
        levels.sort_unstable();
        levels.dedup();
        let ranks = ranks
            .iter()
            .map(|r| levels.binary_search(r).expect("present") as u32)
            .collect();
        Ok(PreferenceOrder {
            ranks,
            bias: Bias::None,
        })
    }

    /// Strict order, most preferred first.
    pub fn strict(order: &[Candidate]) -> Result<Self> {
        let m = order.len();
        let mut ranks = vec![u32::MAX; m];
        for (r, &c) in order.iter().enumerate() {
            if c >= m || ranks[c] != u32::MAX {
                return Err(Error::structural(format!("order {order:?} is not a permutation")));
            }
            ranks[c] = r as u32;
        }
        PreferenceOrder::from_ranks(ranks)
    }

    /// Indifference classes, most preferred class first.
    pub fn from_classes(classes: &[Vec<Candidate>]) -> Result<Self> {
        let m: usize = classes.iter().map(Vec::len).sum();
        let mut ranks = vec![u32::MAX; m];
        for (r, class) in classes.iter().enumerate() {
            for &c in class {
                if c >= m || ranks[c] != u32::MAX {
                    return Err(Error::structural("classes do not partition the candidates"));
                }
                ranks[c] = r as u32;
            }
        }
        PreferenceOrder::from_ranks(ranks)
    }

    pub fn with_bias(mut self, bias: Bias) -> Self {
        self.bias = bias;
        self
    }

    pub fn m(&self) -> usize {
        self.ranks.len()
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    /// `Greater` when `x` is strictly preferred to `y`.
    pub fn cmp_candidates(&self, x: Candidate, y: Candidate) -> Ordering {
        self.ranks[y].cmp(&self.ranks[x])
    }

    pub fn prefers(&self, x: Candidate, y: Candidate) -> bool {
        self.ranks[x] < self.ranks[y]
    }

    /// +1 if `x` is preferred, -1 if `y` is, 0 on indifference.
    pub fn indicator(&self, x: Candidate, y: Candidate) -> i32 {
        match self.cmp_candidates(x, y) {
            Ordering::Greater => 1,
            Ordering::Less => -1,
            Ordering::Equal => 0,
        }
    }

    pub fn is_strict(&self) -> bool {
        let mut seen = self.ranks.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// Candidates from most to least preferred, ties by index.
    pub fn order(&self) -> Vec<Candidate> {
        let mut order: Vec<Candidate> = (0..self.m()).collect();
        order.sort_by_key(|&c| (self.ranks[c], c));
        order
    }

    /// The unique most preferred candidate, if there is one.
    pub fn top(&self) -> Option<Candidate> {
        unique_extreme(&self.ranks, |a, b| a < b)
    }

    /// The unique least preferred candidate, if there is one.
    pub fn bottom(&self) -> Option<Candidate> {
        unique_extreme(&self.ranks, |a, b| a > b)
    }

    /// Most preferred member of `set`, ties by lowest index.
    pub fn favorite_in(&self, set: impl IntoIterator<Item = Candidate>) -> Option<Candidate> {
        set.into_iter().min_by_key(|&c| (self.ranks[c], c))
    }
}

fn unique_extreme(ranks: &[u32], better: impl Fn(u32, u32) -> bool) -> Option<Candidate> {
    let mut best = 0;
    for c in 1..ranks.len() {
        if better(ranks[c], ranks[best]) {
            best = c;
        }
    }
    let ties = ranks.iter().filter(|&&r| r == ranks[best]).count();
    (ties == 1).then_some(best)
}

/// The sincere ballot. Approval needs a rank threshold: candidates with
/// rank strictly below it are approved.
pub fn truthful_ballot(
    rule: &VotingRule,
    prefs: &PreferenceOrder,
    approval_threshold: Option<u32>,
) -> Result<Ballot> {
    let m = rule.m;
    if prefs.m() != m {
        return Err(Error::structural("preference order and rule disagree on m"));
    }
    match rule.kind {
        RuleKind::Plurality => prefs
            .top()
            .map(|c| Ballot::single(m, c))
            .ok_or_else(|| Error::Ambiguity("no unique top candidate".into())),
        RuleKind::Veto => prefs
            .bottom()
            .map(|c| Ballot::veto(m, c))
            .ok_or_else(|| Error::Ambiguity("no unique bottom candidate".into())),
        RuleKind::Borda => {
            if !prefs.is_strict() {
                return Err(Error::Ambiguity("borda needs a strict order".into()));
            }
            let mut v = vec![0; m];
            for (pos, c) in prefs.order().into_iter().enumerate() {
                v[c] = (m - 1 - pos) as u32;
            }
            Ok(Ballot::new(v))
        }
        RuleKind::Approval => {
            let t = approval_threshold
                .ok_or_else(|| Error::Ambiguity("approval needs an approval threshold".into()))?;
            Ok(Ballot::new(prefs.ranks().iter().map(|&r| (r < t) as u32).collect()))
        }
        RuleKind::KApproval(k) => {
            let order = prefs.order();
            if prefs.ranks()[order[k - 1]] == prefs.ranks()[order[k]] {
                return Err(Error::Ambiguity(format!(
                    "indifference straddles the {k}-approval boundary"
                )));
            }
            let mut v = vec![0; m];
            for &c in &order[..k] {
                v[c] = 1;
            }
            Ok(Ballot::new(v))
        }
    }
}

/// The ballot a biased voter favors among outcome-equivalent actions:
/// the truthful ballot under truth bias, abstention under lazy bias.
pub fn favored_ballot(rule: &VotingRule, prefs: &PreferenceOrder) -> Option<Ballot> {
    match prefs.bias {
        Bias::None => None,
        Bias::Truth => truthful_ballot(rule, prefs, None).ok(),
        Bias::Lazy => Some(Ballot::abstain(rule.m)),
    }
}

/// Compares (winner, action) pairs: winners first, then the bias.
pub fn compare(
    prefs: &PreferenceOrder,
    favored: Option<&Ballot>,
    x: (Candidate, &Ballot),
    y: (Candidate, &Ballot),
) -> Ordering {
    let by_winner = prefs.cmp_candidates(x.0, y.0);
    if by_winner != Ordering::Equal || prefs.bias == Bias::None {
        return by_winner;
    }
    match favored {
        Some(f) => {
            let xf = x.1 == f;
            let yf = y.1 == f;
            match (xf, yf) {
                (true, false) => Ordering::Greater,
                (false, true) => Ordering::Less,
                _ => Ordering::Equal,
            }
        }
        None => Ordering::Equal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn winner_examples() {
        assert_eq!(winner(&vec![29, 26, 22, 17, 6].into()).unwrap(), 0);
        assert_eq!(winner(&vec![0, 0, 0].into()).unwrap(), 0);
        assert_eq!(winner(&vec![3, 5, 5].into()).unwrap(), 1);
        assert!(matches!(winner(&ScoreVector::new(vec![])), Err(Error::Structural(_))));
    }

    #[test]
    fn outcome_examples() {
        let p5 = VotingRule::plurality(5);
        let s: ScoreVector = vec![29, 25, 22, 17, 6].into();
        assert_eq!(outcome(&p5, &s, &Ballot::single(5, 1)).unwrap(), 0);
        let p3 = VotingRule::plurality(3);
        assert_eq!(outcome(&p3, &vec![0, 0, 0].into(), &Ballot::single(3, 1)).unwrap(), 1);
        assert_eq!(outcome(&p3, &vec![5, 5, 0].into(), &Ballot::single(3, 1)).unwrap(), 1);
        let bad = Ballot::new(vec![1, 1, 0]);
        assert!(matches!(
            outcome(&p3, &vec![5, 5, 0].into(), &bad),
            Err(Error::RuleViolation { .. })
        ));
    }

    #[test]
    fn zero_ballot_outcome_is_winner() {
        let r = VotingRule::plurality(4);
        for s in [vec![1, 4, 4, 0], vec![0, 0, 0, 0], vec![7, 2, 9, 9]] {
            let s = ScoreVector::new(s);
            assert_eq!(outcome(&r, &s, &Ballot::abstain(4)).unwrap(), winner(&s).unwrap());
        }
    }

    #[test]
    fn ballot_enumeration() {
        let p = allowed_ballots(&VotingRule::plurality(3)).unwrap();
        assert_eq!(p, vec![Ballot::new(vec![1, 0, 0]), Ballot::new(vec![0, 1, 0]), Ballot::new(vec![0, 0, 1])]);
        let v = allowed_ballots(&VotingRule::veto(3)).unwrap();
        assert_eq!(v, vec![Ballot::new(vec![0, 1, 1]), Ballot::new(vec![1, 0, 1]), Ballot::new(vec![1, 1, 0])]);
        let b = allowed_ballots(&VotingRule::borda(3)).unwrap();
        assert_eq!(b.len(), 6);
        for m in 2..=6usize {
            let fact: usize = (1..=m).product();
            assert_eq!(allowed_ballots(&VotingRule::borda(m)).unwrap().len(), fact);
            assert_eq!(allowed_ballots(&VotingRule::approval(m)).unwrap().len(), 1 << m);
            for k in 1..m {
                let rule = VotingRule::new(RuleKind::KApproval(k), m).unwrap();
                let all = allowed_ballots(&rule).unwrap();
                let binom = (0..k).fold(1usize, |acc, i| acc * (m - i) / (i + 1));
                assert_eq!(all.len(), binom);
                assert!(all.iter().all(|a| rule.is_valid_ballot(a, false)));
            }
        }
        for rule in [VotingRule::plurality(5), VotingRule::veto(5), VotingRule::borda(5), VotingRule::approval(5)] {
            assert!(allowed_ballots(&rule).unwrap().iter().all(|a| rule.is_valid_ballot(a, false)));
        }
    }

    #[test]
    fn borda_cap_is_reported() {
        let err = allowed_ballots(&VotingRule::borda(7)).unwrap_err();
        assert!(matches!(err, Error::Capacity { bound: 6, reached: 7, .. }));
    }

    #[test]
    fn abstain_only_with_lazy_bias() {
        let r = VotingRule::plurality(3);
        assert!(!r.is_valid_ballot(&Ballot::abstain(3), false));
        assert!(r.is_valid_ballot(&Ballot::abstain(3), true));
        let menu = ballot_menu(&r, Bias::Lazy, &BallotCaps::default()).unwrap();
        assert_eq!(menu.last(), Some(&Ballot::abstain(3)));
        assert_eq!(ballot_menu(&r, Bias::Truth, &BallotCaps::default()).unwrap().len(), 3);
    }

    #[test]
    fn truthful_examples() {
        // poll order w,b,c,d,e; voter e > d > c > b > w
        let p = PreferenceOrder::strict(&[4, 3, 2, 1, 0]).unwrap();
        assert_eq!(
            truthful_ballot(&VotingRule::plurality(5), &p, None).unwrap(),
            Ballot::new(vec![0, 0, 0, 0, 1])
        );
        let abc = PreferenceOrder::strict(&[0, 1, 2]).unwrap();
        assert_eq!(truthful_ballot(&VotingRule::borda(3), &abc, None).unwrap(), Ballot::new(vec![2, 1, 0]));
        assert_eq!(truthful_ballot(&VotingRule::veto(3), &abc, None).unwrap(), Ballot::new(vec![1, 1, 0]));
        assert_eq!(
            truthful_ballot(&VotingRule::approval(3), &abc, Some(2)).unwrap(),
            Ballot::new(vec![1, 1, 0])
        );
        let weak = PreferenceOrder::from_classes(&[vec![0, 1], vec![2]]).unwrap();
        assert!(matches!(
            truthful_ballot(&VotingRule::plurality(3), &weak, None),
            Err(Error::Ambiguity(_))
        ));
        assert_eq!(truthful_ballot(&VotingRule::veto(3), &weak, None).unwrap(), Ballot::veto(3, 2));
        assert!(truthful_ballot(&VotingRule::approval(3), &abc, None).is_err());
    }

    #[test]
    fn compare_examples() {
        let p = PreferenceOrder::strict(&[0, 1, 2]).unwrap();
        let a = Ballot::single(3, 0);
        let b = Ballot::single(3, 1);
        assert_eq!(compare(&p, None, (1, &a), (1, &b)), Ordering::Equal);
        let tb = p.clone().with_bias(Bias::Truth);
        let fav = favored_ballot(&VotingRule::plurality(3), &tb).unwrap();
        assert_eq!(fav, a);
        assert_eq!(compare(&tb, Some(&fav), (1, &a), (1, &b)), Ordering::Greater);
        assert_eq!(compare(&tb, Some(&fav), (1, &b), (1, &a)), Ordering::Less);
        for bias in [Bias::None, Bias::Truth, Bias::Lazy] {
            let q = p.clone().with_bias(bias);
            assert_eq!(compare(&q, Some(&b), (0, &a), (2, &b)), Ordering::Greater);
        }
    }

    #[test]
    fn single_and_abstain_helpers() {
        assert_eq!(Ballot::single(4, 2).as_single(), Some(2));
        assert_eq!(Ballot::veto(4, 2).as_single(), None);
        assert_eq!(Ballot::abstain(4).as_single(), None);
        let s: ScoreVector = vec![3, 5, 5, 1].into();
        assert_eq!(s.score_order(), vec![1, 2, 0, 3]);
        assert_eq!(s.total(), 14);
    }
}
