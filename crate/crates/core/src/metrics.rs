//! Distances between score vectors and the balls they induce.
//!
//! Distances are exact rationals. Internally everything is measured in
//! "vote units" and divided by the declared population size `n` at the
//! end, so a radius of one vote unit under EMD means one relocated vote.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::election::ScoreVector;
use crate::error::{Error, Result};

/// Default bound on the number of search nodes visited by [`ball`].
pub const DEFAULT_BALL_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum MetricKind {
    /// Earth mover distance: half the l1 distance, equal totals only.
    Emd,
    /// Half the l1 distance. Balls keep the center's total when asked to.
    L1 { preserve_total: bool },
    /// Largest per-candidate difference.
    LInf,
    /// `max_c weight_c * |s(c) - t(c)|`.
    CandidateWise { weights: Vec<u32> },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Metric {
    pub kind: MetricKind,
    /// Population size used to map vote units into `[0, 1]`.
    pub scale: u64,
}

/// A radius, kept both as the declared fraction and as whole vote units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Radius {
    pub value: Ratio<u64>,
    pub vote_units: u64,
}

impl Radius {
    pub fn votes(units: u64, scale: u64) -> Self {
        Radius {
            value: Ratio::new(units, scale.max(1)),
            vote_units: units,
        }
    }

    /// A fraction of `scale` voters. Fractional balls are open: the radius
    /// keeps the states strictly closer than `value * scale` votes, and a
    /// zero radius keeps the center alone.
    pub fn fraction(value: Ratio<u64>, scale: u64) -> Result<Self> {
        if value > Ratio::from_integer(1) {
            return Err(Error::config(format!("radius {value} exceeds 1")));
        }
        Ok(Radius {
            value,
            vote_units: (value * scale).ceil().to_integer().saturating_sub(1),
        })
    }

    pub fn percent(pct: u64, scale: u64) -> Result<Self> {
        Radius::fraction(Ratio::new(pct, 100), scale)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricProperties {
    pub neutral: bool,
    pub candidate_wise: bool,
}

impl Metric {
    pub fn new(kind: MetricKind, scale: u64) -> Self {
        Metric {
            kind,
            scale: scale.max(1),
        }
    }

    pub fn emd(scale: u64) -> Self {
        Metric::new(MetricKind::Emd, scale)
    }

    pub fn linf(scale: u64) -> Self {
        Metric::new(MetricKind::LInf, scale)
    }

    pub fn l1(scale: u64, preserve_total: bool) -> Self {
        Metric::new(MetricKind::L1 { preserve_total }, scale)
    }

    pub fn properties(&self) -> MetricProperties {
        metric_properties(self)
    }

    /// Whether balls of this metric keep the center's total.
    pub fn preserves_total(&self) -> bool {
        matches!(
            self.kind,
            MetricKind::Emd | MetricKind::L1 { preserve_total: true }
        )
    }

    /// Distance in vote units, as twice its value to stay integral.
    pub(crate) fn doubled_units(&self, s: &[u32], t: &[u32]) -> u64 {
        let diffs = s.iter().zip(t).map(|(&a, &b)| (a as i64 - b as i64).unsigned_abs());
        match &self.kind {
            MetricKind::Emd | MetricKind::L1 { .. } => diffs.sum(),
            MetricKind::LInf => 2 * diffs.max().unwrap_or(0),
            MetricKind::CandidateWise { weights } => {
                2 * diffs.zip(weights).map(|(d, &w)| d * w as u64).max().unwrap_or(0)
            }
        }
    }

    fn check_shapes(&self, s: &ScoreVector, t: &ScoreVector) -> Result<()> {
        if s.len() != t.len() {
            return Err(Error::structural("score vectors of different lengths"));
        }
        if let MetricKind::CandidateWise { weights } = &self.kind {
            if weights.len() != s.len() {
                return Err(Error::structural("candidate-wise weights do not match m"));
            }
            if weights.contains(&0) {
                return Err(Error::Domain("candidate-wise weights must be positive".into()));
            }
        }
        if matches!(self.kind, MetricKind::Emd) && s.total() != t.total() {
            return Err(Error::Domain(format!(
                "EMD needs equal totals, got {} and {}",
                s.total(),
                t.total()
            )));
        }
        Ok(())
    }
}

pub(crate) fn doubled_units(metric: &Metric, s: &[u32], t: &[u32]) -> u64 {
    metric.doubled_units(s, t)
}

/// Normalized distance `units / scale`.
pub fn distance(metric: &Metric, s: &ScoreVector, t: &ScoreVector) -> Result<Ratio<u64>> {
    metric.check_shapes(s, t)?;
    Ok(Ratio::new(
        metric.doubled_units(s.scores(), t.scores()),
        2 * metric.scale,
    ))
}

/// Distance in vote units (may be a half for l1 on unequal totals).
pub fn distance_units(metric: &Metric, s: &ScoreVector, t: &ScoreVector) -> Result<Ratio<u64>> {
    metric.check_shapes(s, t)?;
    Ok(Ratio::new(metric.doubled_units(s.scores(), t.scores()), 2))
}

pub fn metric_properties(metric: &Metric) -> MetricProperties {
    match &metric.kind {
        MetricKind::Emd | MetricKind::L1 { .. } => MetricProperties {
            neutral: true,
            candidate_wise: false,
        },
        MetricKind::LInf => MetricProperties {
            neutral: true,
            candidate_wise: true,
        },
        MetricKind::CandidateWise { weights } => MetricProperties {
            neutral: weights.windows(2).all(|w| w[0] == w[1]),
            candidate_wise: true,
        },
    }
}

/// All non-negative vectors within `r` of `center`, in lexicographic order.
pub fn ball(metric: &Metric, center: &ScoreVector, r: Radius) -> Result<Vec<ScoreVector>> {
    ball_capped(metric, center, r, DEFAULT_BALL_CAP)
}

pub fn ball_capped(
    metric: &Metric,
    center: &ScoreVector,
    r: Radius,
    cap: u64,
) -> Result<Vec<ScoreVector>> {
    metric.check_shapes(center, center)?;
    let mut search = BallSearch {
        center: center.scores(),
        budget2: 2 * r.vote_units,
        cap,
        visited: 0,
        current: Vec::with_capacity(center.len()),
        out: Vec::new(),
    };
    match &metric.kind {
        MetricKind::Emd | MetricKind::L1 { preserve_total: true } => search.balanced(0, 0, 0)?,
        MetricKind::L1 { preserve_total: false } => search.l1_free(0, 0)?,
        MetricKind::LInf => {
            let radii = vec![r.vote_units; center.len()];
            search.boxed(0, &radii)?
        }
        MetricKind::CandidateWise { weights } => {
            let radii: Vec<u64> = weights.iter().map(|&w| r.vote_units / w as u64).collect();
            search.boxed(0, &radii)?
        }
    }
    Ok(search.out)
}

struct BallSearch<'a> {
    center: &'a [u32],
    /// Twice the radius in vote units.
    budget2: u64,
    cap: u64,
    visited: u64,
    current: Vec<u32>,
    out: Vec<ScoreVector>,
}

impl BallSearch<'_> {
    fn tick(&mut self) -> Result<()> {
        self.visited += 1;
        if self.visited > self.cap {
            return Err(Error::capacity("ball enumeration nodes", self.cap, self.visited));
        }
        Ok(())
    }

    fn emit(&mut self) {
        self.out.push(ScoreVector::new(self.current.clone()));
    }

    /// Zero-sum deviations with both positive and negative mass within the
    /// radius; the last coordinate is forced.
    fn balanced(&mut self, c: usize, gained: u64, lost: u64) -> Result<()> {
        self.tick()?;
        let r = self.budget2 / 2;
        let x = self.center[c] as i64;
        if c + 1 == self.center.len() {
            let delta = lost as i64 - gained as i64;
            let (g, l) = if delta >= 0 {
                (gained + delta as u64, lost)
            } else {
                (gained, lost + (-delta) as u64)
            };
            if x + delta >= 0 && g <= r && l <= r {
                self.current.push((x + delta) as u32);
                self.emit();
                self.current.pop();
            }
            return Ok(());
        }
        let lo = -(x.min((r - lost) as i64));
        let hi = (r - gained) as i64;
        for delta in lo..=hi {
            let (g, l) = if delta >= 0 {
                (gained + delta as u64, lost)
            } else {
                (gained, lost + (-delta) as u64)
            };
            self.current.push((x + delta) as u32);
            self.balanced(c + 1, g, l)?;
            self.current.pop();
        }
        Ok(())
    }

    fn l1_free(&mut self, c: usize, used: u64) -> Result<()> {
        self.tick()?;
        if c == self.center.len() {
            self.emit();
            return Ok(());
        }
        let x = self.center[c] as i64;
        let rest = (self.budget2 - used) as i64;
        for delta in -(x.min(rest))..=rest {
            self.current.push((x + delta) as u32);
            self.l1_free(c + 1, used + delta.unsigned_abs())?;
            self.current.pop();
        }
        Ok(())
    }

    fn boxed(&mut self, c: usize, radii: &[u64]) -> Result<()> {
        self.tick()?;
        if c == self.center.len() {
            self.emit();
            return Ok(());
        }
        let x = self.center[c] as u64;
        for v in x.saturating_sub(radii[c])..=x + radii[c] {
            self.current.push(v as u32);
            self.boxed(c + 1, radii)?;
            self.current.pop();
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(v: &[u32]) -> ScoreVector {
        ScoreVector::new(v.to_vec())
    }

    /// Every vector in the box `[0, c+2r]^m`, filtered by distance.
    fn brute_ball(metric: &Metric, center: &ScoreVector, r: Radius) -> Vec<ScoreVector> {
        let m = center.len();
        let limit: Vec<u32> = center.scores().iter().map(|&x| x + 2 * r.vote_units as u32 + 1).collect();
        let mut out = Vec::new();
        let mut cur = vec![0u32; m];
        loop {
            let t = ScoreVector::new(cur.clone());
            if let Ok(d) = distance_units(metric, center, &t) {
                if d <= Ratio::from_integer(r.vote_units) && (!metric.preserves_total() || t.total() == center.total()) {
                    out.push(t);
                }
            }
            let mut i = m;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] <= limit[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    #[test]
    fn distance_examples() {
        let emd = Metric::emd(100);
        let s = sv(&[29, 26, 22, 17, 6]);
        assert_eq!(distance(&emd, &s, &s).unwrap(), Ratio::from_integer(0));
        // one relocated vote, by the sum-of-absolute-differences oracle
        let t = sv(&[28, 27, 22, 17, 6]);
        let l1: u64 = s.scores().iter().zip(t.scores()).map(|(&a, &b)| (a as i64 - b as i64).unsigned_abs()).sum();
        assert_eq!(Ratio::new(l1, 2 * 100), Ratio::new(1, 100));
        assert_eq!(distance(&emd, &s, &t).unwrap(), Ratio::new(1, 100));
        let linf = Metric::linf(100);
        let u = sv(&[26, 29, 22, 17, 6]);
        assert_eq!(distance(&linf, &s, &u).unwrap(), Ratio::new(3, 100));
    }

    #[test]
    fn emd_rejects_unequal_totals() {
        let err = distance(&Metric::emd(10), &sv(&[1, 2]), &sv(&[1, 3])).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        assert!(distance(&Metric::l1(10, false), &sv(&[1, 2]), &sv(&[1, 3])).is_ok());
    }

    #[test]
    fn ball_examples() {
        let c = sv(&[3, 2]);
        for metric in [Metric::emd(5), Metric::linf(5), Metric::l1(5, false)] {
            assert_eq!(ball(&metric, &c, Radius::votes(0, 5)).unwrap(), vec![c.clone()]);
        }
        assert_eq!(
            ball(&Metric::emd(5), &c, Radius::votes(1, 5)).unwrap(),
            vec![sv(&[2, 3]), sv(&[3, 2]), sv(&[4, 1])]
        );
        let linf = ball(&Metric::linf(5), &c, Radius::votes(1, 5)).unwrap();
        let mut expected = Vec::new();
        for a in 2..=4 {
            for b in 1..=3 {
                expected.push(sv(&[a, b]));
            }
        }
        assert_eq!(linf, expected);
    }

    #[test]
    fn ball_matches_brute_force() {
        let metrics = [
            Metric::emd(10),
            Metric::l1(10, false),
            Metric::l1(10, true),
            Metric::linf(10),
            Metric::new(MetricKind::CandidateWise { weights: vec![1, 2, 1] }, 10),
        ];
        for metric in &metrics {
            for center in [sv(&[0, 0, 0]), sv(&[3, 1, 0]), sv(&[2, 2, 5])] {
                for r in 0..=3 {
                    let r = Radius::votes(r, 10);
                    assert_eq!(ball(metric, &center, r).unwrap(), brute_ball(metric, &center, r), "{metric:?} {center} {r:?}");
                }
            }
        }
    }

    #[test]
    fn ball_cap_reports_bound() {
        let err = ball_capped(&Metric::linf(100), &sv(&[50, 50, 50, 50]), Radius::votes(10, 100), 1000).unwrap_err();
        assert!(matches!(err, Error::Capacity { bound: 1000, .. }));
    }

    #[test]
    fn fractional_radii_are_open() {
        assert_eq!(Radius::percent(17, 100).unwrap().vote_units, 16);
        assert_eq!(Radius::percent(7, 99).unwrap().vote_units, 6);
        assert_eq!(Radius::percent(1, 100).unwrap().vote_units, 0);
        assert_eq!(Radius::percent(0, 100).unwrap().vote_units, 0);
        assert_eq!(Radius::fraction(Ratio::new(1, 40), 100).unwrap().vote_units, 2);
        assert_eq!(Radius::fraction(Ratio::new(1, 200), 100).unwrap().vote_units, 0);
        assert!(Radius::fraction(Ratio::new(3, 2), 100).is_err());
    }

    #[test]
    fn property_flags() {
        assert_eq!(metric_properties(&Metric::emd(1)), MetricProperties { neutral: true, candidate_wise: false });
        assert_eq!(metric_properties(&Metric::linf(1)), MetricProperties { neutral: true, candidate_wise: true });
        let skew = Metric::new(MetricKind::CandidateWise { weights: vec![1, 3] }, 1);
        assert_eq!(metric_properties(&skew), MetricProperties { neutral: false, candidate_wise: true });
    }
}
