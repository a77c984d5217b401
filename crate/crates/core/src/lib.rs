//! Ordinal dominance for strategic voting under uncertainty.
//!
//! A voter knows the others' tally only up to nested information sets.
//! Each set induces a pivot graph (which candidates could be swapped by
//! changing her ballot), and a ballot is dominated when another one is at
//! least as good on every edge and strictly better on some edge of some
//! level. Common voting heuristics fall out as special structures, and
//! iterated dominance moves converge under plurality and veto.

pub mod dominance;
pub mod dynamics;
pub mod election;
pub mod epistemic;
pub mod error;
pub mod graph;
pub mod heuristics;
pub mod metrics;

pub mod cli;
pub mod config;
pub mod format;
pub mod suites;

use serde::{Deserialize, Serialize};

pub use dominance::{od_check, od_set, uod_set, DominanceMode, DominanceVerdict};
pub use election::{
    Ballot, Bias, Candidate, PreferenceOrder, RuleKind, ScoreVector, VotingRule,
};
pub use epistemic::{EpistemicModel, VoterContext};
pub use error::{Error, Result};
pub use graph::{PivotGraph, PivotGraphStructure};
pub use heuristics::HeuristicKind;
pub use metrics::{Metric, MetricKind, Radius};

/// Bounds on every enumeration the crate performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Limits {
    pub ballots: election::BallotCaps,
    /// Most states a single ball may contain.
    pub ball_cap: u64,
    /// Most (state, ballot) evaluations in a single derivation.
    pub enumeration_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            ballots: election::BallotCaps::default(),
            ball_cap: metrics::DEFAULT_BALL_CAP,
            enumeration_cap: 200_000_000,
        }
    }
}
