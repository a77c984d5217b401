//! TOML run configuration. Every field is optional; command-line flags
//! override what the file sets.
//!
//! ```toml
//! rule = "plurality"
//! seed = 7
//! mode = "auto"
//! election = "examples/data/figure2.txt"
//! voter = 0
//! model = "emd:1%,3%,7%,17%"
//!
//! [dynamics]
//! policy = { kind = "best-uod" }
//! scheduler = "random"
//!
//! [verify]
//! lemma_instances = 500
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dominance::DominanceMode;
use crate::dynamics::{BatchConfig, MovePolicy};
use crate::election::RuleKind;
use crate::epistemic::EpistemicModel;
use crate::error::{Error, Result};
use crate::heuristics::HeuristicKind;
use crate::metrics::{Metric, MetricKind, Radius};
use crate::suites::VerifyParams;
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub rule: Option<RuleKind>,
    pub seed: Option<u64>,
    pub mode: Option<DominanceMode>,
    pub election: Option<PathBuf>,
    pub voter: Option<usize>,
    /// Model shorthand, see [`ModelSpec::parse`].
    pub model: Option<String>,
    pub limits: Limits,
    pub dynamics: DynamicsConfig,
    /// A synthetic batch for `run` when no election is given.
    pub batch: Option<BatchConfig>,
    pub verify: VerifyParams,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DynamicsConfig {
    pub policy: MovePolicy,
    /// `round-robin` or `random`.
    pub scheduler: Option<String>,
    pub step_cap: Option<usize>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let (line, column) = e
                .span()
                .map(|s| line_col(text, s.start))
                .unwrap_or((0, 0));
            Error::Parse {
                line,
                column,
                message: e.message().to_string(),
            }
        })
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

/// A belief model before the population size is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelSpec {
    FullInformation,
    Distance { kind: MetricKind, radii: Vec<RadiusSpec> },
    Heuristic(HeuristicKind),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadiusSpec {
    Percent(u64),
    Votes(u64),
}

impl ModelSpec {
    /// Parses `full`, `not-last`, `leader-rule`, `t-star:T`,
    /// `t-pragmatist:T`, or `METRIC:R1,R2,...` with METRIC one of `emd`,
    /// `linf`, `l1` and each radius either votes (`3`) or percent (`3%`).
    pub fn parse(text: &str) -> Result<Self> {
        let (head, tail) = match text.split_once(':') {
            Some((h, t)) => (h.trim(), Some(t.trim())),
            None => (text.trim(), None),
        };
        let t_param = |tail: Option<&str>| -> Result<usize> {
            tail.and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::config(format!("`{head}` needs a positive integer, e.g. `{head}:2`")))
        };
        let kind = match head {
            "full" => return Ok(ModelSpec::FullInformation),
            "not-last" => return Ok(ModelSpec::Heuristic(HeuristicKind::NotLast)),
            "leader-rule" => return Ok(ModelSpec::Heuristic(HeuristicKind::LeaderRule)),
            "t-star" => return Ok(ModelSpec::Heuristic(HeuristicKind::TStar { t: t_param(tail)? })),
            "t-pragmatist" => return Ok(ModelSpec::Heuristic(HeuristicKind::TPragmatist { t: t_param(tail)? })),
            "emd" => MetricKind::Emd,
            "linf" => MetricKind::LInf,
            "l1" => MetricKind::L1 { preserve_total: false },
            other => return Err(Error::config(format!("unknown model `{other}`"))),
        };
        let tail = tail.ok_or_else(|| Error::config(format!("`{head}` needs radii, e.g. `{head}:1,3`")))?;
        let radii = tail
            .split(',')
            .map(|r| {
                let r = r.trim();
                let (digits, pct) = match r.strip_suffix('%') {
                    Some(d) => (d, true),
                    None => (r, false),
                };
                let v: u64 = digits
                    .parse()
                    .map_err(|_| Error::config(format!("bad radius `{r}`")))?;
                Ok(if pct { RadiusSpec::Percent(v) } else { RadiusSpec::Votes(v) })
            })
            .collect::<Result<Vec<_>>>()?;
        if radii.is_empty() {
            return Err(Error::config("a distance model needs at least one radius"));
        }
        Ok(ModelSpec::Distance { kind, radii })
    }

    /// Fixes the population size `n` used for scaling and percent radii.
    pub fn resolve(&self, n: u64) -> Result<EpistemicModel> {
        Ok(match self {
            ModelSpec::FullInformation => EpistemicModel::FullInformation,
            ModelSpec::Heuristic(h) => EpistemicModel::Heuristic { heuristic: h.clone() },
            ModelSpec::Distance { kind, radii } => EpistemicModel::DistanceBased {
                metric: Metric::new(kind.clone(), n),
                radii: radii
                    .iter()
                    .map(|r| match *r {
                        RadiusSpec::Percent(p) => Radius::percent(p, n),
                        RadiusSpec::Votes(v) => Ok(Radius::votes(v, n)),
                    })
                    .collect::<Result<Vec<_>>>()?,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_full_file() {
        let c = RunConfig::from_toml(
            r#"
rule = "veto"
seed = 3
model = "linf:1,2"
[dynamics]
policy = { kind = "any-od" }
scheduler = "random"
[limits]
ball_cap = 1000
[verify]
lemma_instances = 5
"#,
        )
        .unwrap();
        assert_eq!(c.rule, Some(RuleKind::Veto));
        assert_eq!(c.dynamics.policy, MovePolicy::AnyOd);
        assert_eq!(c.limits.ball_cap, 1000);
        assert_eq!(c.verify.lemma_instances, 5);
        assert_eq!(c.verify.spp_n, VerifyParams::default().spp_n);
    }

    #[test]
    fn unknown_keys_are_parse_errors_with_position() {
        let e = RunConfig::from_toml("rule = \"plurality\"\nbogus = 1\n").unwrap_err();
        match e {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn model_shorthand() {
        assert_eq!(ModelSpec::parse("full").unwrap(), ModelSpec::FullInformation);
        let m = ModelSpec::parse("emd:1%,3%,7%,17%").unwrap().resolve(100).unwrap();
        match m {
            EpistemicModel::DistanceBased { radii, .. } => {
                assert_eq!(radii.iter().map(|r| r.vote_units).collect::<Vec<_>>(), [0, 2, 6, 16])
            }
            _ => unreachable!(),
        }
        assert!(matches!(ModelSpec::parse("t-star"), Err(Error::Configuration(_))));
        assert!(matches!(ModelSpec::parse("emd:x"), Err(Error::Configuration(_))));
        assert_eq!(
            ModelSpec::parse("t-star:2").unwrap(),
            ModelSpec::Heuristic(HeuristicKind::TStar { t: 2 })
        );
    }
}
