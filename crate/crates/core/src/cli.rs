//! The `pivot-vote` command line: `derive`, `dominate`, `verify`, `run`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{ModelSpec, RunConfig};
use crate::dominance::{aggregate, od_check_biased, DominanceMode, DominanceOracle};
use crate::dynamics::{batch_verify, explore_all, run, Game, MovePolicy, Scheduler, Status};
use crate::election::{favored_ballot, Ballot, RuleKind, ScoreVector, VotingRule};
use crate::epistemic::{derive_beliefs, is_upward_closed, EpistemicModel, VoterContext};
use crate::error::{Error, Result};
use crate::format::{format_ballot, format_ranking, names_of, parse_ballot, parse_election, record, Election};
use crate::suites::{self, SuiteReport, VerifyParams};
use crate::Limits;

/// Exit codes by error class.
pub mod exit {
    pub const OK: i32 = 0;
    pub const OTHER: i32 = 1;
    /// Reserved by the argument parser for usage errors.
    pub const USAGE: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const CONFIG: i32 = 4;
    pub const CAPACITY: i32 = 5;
    pub const VERIFICATION: i32 = 6;
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => exit::PARSE,
        Error::Configuration(_)
        | Error::RuleViolation { .. }
        | Error::Structural(_)
        | Error::Domain(_)
        | Error::Ambiguity(_) => exit::CONFIG,
        Error::Capacity { .. } => exit::CAPACITY,
        Error::Verification(_) => exit::VERIFICATION,
        Error::Io(_) => exit::OTHER,
    }
}

#[derive(Debug, Parser)]
#[command(name = "pivot-vote", version, about = "Ordinal dominance for strategic voting")]
pub struct Cli {
    /// TOML run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Bound on search nodes per ball enumeration.
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    /// Directory for artifacts.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub oracle: Option<OracleArg>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleArg {
    Graph,
    Exact,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Records,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pivot-graph structure of one voter.
    Derive(ElectionArgs),
    /// Dominating ballots of one voter, or one pairwise verdict.
    Dominate(DominateArgs),
    /// Property suites; no target runs all of them.
    Verify(VerifyArgs),
    /// Iterated dominance moves from an election file, or a configured batch.
    Run(RunArgs),
}

#[derive(Debug, Args)]
pub struct ElectionArgs {
    /// Election file.
    #[arg(long)]
    pub election: Option<PathBuf>,
    /// Voter index in the file, from 0.
    #[arg(long)]
    pub voter: Option<usize>,
    /// plurality, veto, borda, approval or k-approval:K.
    #[arg(long)]
    pub rule: Option<String>,
    /// full, not-last, leader-rule, t-star:T, t-pragmatist:T or METRIC:R1,R2 (emd, linf, l1; `3%` or `3` votes).
    #[arg(long)]
    pub model: Option<String>,
}

#[derive(Debug, Args)]
pub struct DominateArgs {
    #[command(flatten)]
    pub election: ElectionArgs,
    /// Candidate ballot; defaults to every ballot of the menu.
    #[arg(long)]
    pub ballot: Option<String>,
    /// Ballot to compare against; defaults to the voter's current ballot.
    #[arg(long)]
    pub against: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub targets: Vec<String>,
    /// Small instance counts for a fast smoke run.
    #[arg(long)]
    pub quick: bool,
    /// Print the target names and exit.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub election: ElectionArgs,
    /// best-uod or any-od.
    #[arg(long)]
    pub policy: Option<String>,
    /// round-robin or random.
    #[arg(long)]
    pub scheduler: Option<String>,
    #[arg(long)]
    pub step_cap: Option<usize>,
    /// Search every activation order from the file's profile for a cycle.
    #[arg(long)]
    pub exhaustive: bool,
}

/// Parses arguments and runs, writing results to `out`. Returns the exit
/// code; errors go to `err`.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let text = e.render().to_string();
            if code == exit::OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => exit::OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Settings after merging the config file with flags.
struct Settings {
    cfg: RunConfig,
    /// From `--seed` or the config file; each command has its own default.
    seed: Option<u64>,
    mode: DominanceMode,
    limits: Limits,
    format: OutputFormat,
    out: Option<PathBuf>,
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let mut limits = cfg.limits;
    if let Some(cap) = cli.cap {
        limits.ball_cap = cap;
    }
    let mode = match cli.oracle {
        Some(OracleArg::Graph) => DominanceMode::Graph,
        Some(OracleArg::Exact) => DominanceMode::Exact,
        Some(OracleArg::Auto) => DominanceMode::Auto,
        None => cfg.mode.unwrap_or_default(),
    };
    let s = Settings {
        seed: cli.seed.or(cfg.seed),
        mode,
        limits,
        format: cli.format,
        out: cli.out.clone(),
        cfg,
    };
    match &cli.command {
        Command::Derive(a) => derive(&s, a, out),
        Command::Dominate(a) => dominate(&s, a, out),
        Command::Verify(a) => verify(&s, a, out),
        Command::Run(a) => run_cmd(&s, a, out),
    }
}

pub fn parse_rule(text: &str, m: usize) -> Result<VotingRule> {
    let kind = match text.trim() {
        "plurality" => RuleKind::Plurality,
        "veto" => RuleKind::Veto,
        "borda" => RuleKind::Borda,
        "approval" => RuleKind::Approval,
        t => match t.strip_prefix("k-approval:").map(str::parse) {
            Some(Ok(k)) => RuleKind::KApproval(k),
            _ => return Err(Error::config(format!("unknown rule `{t}`"))),
        },
    };
    VotingRule::new(kind, m)
}

/// Election, rule and model shared by the per-voter commands.
struct Loaded {
    election: Election,
    rule: VotingRule,
    model_spec: ModelSpec,
    /// Current tally, including every voter's ballot.
    poll: ScoreVector,
}

fn load(s: &Settings, a: &ElectionArgs) -> Result<Loaded> {
    let path = a
        .election
        .clone()
        .or_else(|| s.cfg.election.clone())
        .ok_or_else(|| Error::config("no election file: pass --election or set `election`"))?;
    let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let election = parse_election(&text)?;
    let m = election.candidates.len();
    let rule = match &a.rule {
        Some(r) => parse_rule(r, m)?,
        None => VotingRule::new(s.cfg.rule.unwrap_or(RuleKind::Plurality), m)?,
    };
    let model_text = a.model.clone().or_else(|| s.cfg.model.clone()).unwrap_or_else(|| "full".into());
    let model_spec = ModelSpec::parse(&model_text)?;
    let poll = match &election.poll {
        Some(p) => p.clone(),
        None => {
            let ballots = election
                .voters
                .iter()
                .map(|v| v.ballot.clone())
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::config("without a poll line every voter needs a ballot"))?;
            aggregate(&ballots, m)?
        }
    };
    Ok(Loaded {
        election,
        rule,
        model_spec,
        poll,
    })
}

fn voter_ctx(s: &Settings, a: &ElectionArgs, l: &Loaded) -> Result<(usize, VoterContext, EpistemicModel)> {
    let i = a.voter.or(s.cfg.voter).unwrap_or(0);
    let v = l
        .election
        .voters
        .get(i)
        .ok_or_else(|| Error::config(format!("voter {i} not in the file ({} voters)", l.election.voters.len())))?;
    let current = v
        .ballot
        .clone()
        .ok_or_else(|| Error::config(format!("voter {i} has no current ballot")))?;
    let ctx = VoterContext::from_poll(&l.poll, current, v.prefs.clone(), l.rule)?;
    let model = l.model_spec.resolve(l.poll.total())?;
    Ok((i, ctx, model))
}

fn write_artifact(s: &Settings, name: &str, contents: &str) -> Result<()> {
    if let Some(dir) = &s.out {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(name), contents)?;
    }
    Ok(())
}

fn edge_names(g: &crate::graph::PivotGraph, names: &[String]) -> Vec<(String, String)> {
    g.edges()
        .into_iter()
        .map(|(a, b)| (names[a].clone(), names[b].clone()))
        .collect()
}

fn derive(s: &Settings, a: &ElectionArgs, out: &mut dyn Write) -> Result<()> {
    let l = load(s, a)?;
    let names = &l.election.candidates;
    let (i, ctx, model) = voter_ctx(s, a, &l)?;
    let beliefs = derive_beliefs(&model, &ctx, true, &s.limits)?;
    let upward = if l.rule.m <= 6 {
        Some(is_upward_closed(&beliefs.structure, None)?)
    } else {
        None
    };
    let radii: Vec<Option<u64>> = match &model {
        EpistemicModel::DistanceBased { radii, .. } => radii.iter().map(|r| Some(r.vote_units)).collect(),
        _ => vec![None; beliefs.structure.k()],
    };
    #[derive(serde::Serialize)]
    struct LevelRec {
        level: usize,
        radius_votes: Option<u64>,
        states: Option<usize>,
        edges: Vec<(String, String)>,
    }
    let levels: Vec<LevelRec> = beliefs
        .structure
        .levels()
        .iter()
        .enumerate()
        .map(|(j, g)| LevelRec {
            level: j + 1,
            radius_votes: radii.get(j).copied().flatten(),
            states: beliefs.sets.as_ref().map(|t| t.level(j).count()),
            edges: edge_names(g, names),
        })
        .collect();
    match s.format {
        OutputFormat::Text => {
            writeln!(
                out,
                "voter {i}: {} with ballot {}, others' tally {}",
                format_ranking(&ctx.prefs, names),
                format_ballot(&ctx.current, &l.rule, names),
                ctx.state
            )?;
            for lv in &levels {
                let edges: Vec<String> = lv.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
                write!(out, "H{}", lv.level)?;
                if let Some(r) = lv.radius_votes {
                    write!(out, " r={r}")?;
                }
                if let Some(n) = lv.states {
                    write!(out, " states={n}")?;
                }
                writeln!(out, ": {{{}}}", edges.join(", "))?;
            }
            if let Some(sharp) = beliefs.sharp {
                writeln!(out, "sharp pivot property: {}", if sharp { "holds" } else { "fails" })?;
            }
            if let Some(u) = &upward {
                match &u.witness {
                    Some(w) if u.holds => writeln!(out, "upward closed under {}", names_of(w.iter().copied(), names))?,
                    _ => writeln!(out, "not upward closed")?,
                }
            }
        }
        OutputFormat::Records => {
            for lv in &levels {
                writeln!(out, "{}", record("level", lv))?;
            }
            #[derive(serde::Serialize)]
            struct Summary {
                voter: usize,
                sharp: Option<bool>,
                upward_closed: Option<bool>,
            }
            writeln!(
                out,
                "{}",
                record(
                    "structure",
                    &Summary {
                        voter: i,
                        sharp: beliefs.sharp,
                        upward_closed: upward.as_ref().map(|u| u.holds),
                    }
                )
            )?;
        }
    }
    write_artifact(s, "structure.json", &serde_json::to_string_pretty(&beliefs.structure).expect("json"))?;
    write_artifact(s, "structure.dot", &beliefs.structure.to_dot(names))?;
    if let Some(t) = &beliefs.sets {
        for j in 0..t.k() {
            write_artifact(s, &format!("level-{}.json", j + 1), &serde_json::to_string(&t.level_vec(j)).expect("json"))?;
        }
    }
    Ok(())
}

fn dominate(s: &Settings, a: &DominateArgs, out: &mut dyn Write) -> Result<()> {
    let l = load(s, &a.election)?;
    let names = &l.election.candidates;
    let (i, ctx, model) = voter_ctx(s, &a.election, &l)?;
    let oracle = DominanceOracle::new(&ctx, &model, s.mode, &s.limits)?;
    let fmt = |b: &Ballot| format_ballot(b, &l.rule, names);
    if a.ballot.is_some() || a.against.is_some() {
        let x = match &a.ballot {
            Some(t) => parse_ballot(t, &l.rule, names)?,
            None => ctx.current.clone(),
        };
        let y = match &a.against {
            Some(t) => parse_ballot(t, &l.rule, names)?,
            None => ctx.current.clone(),
        };
        let favored = favored_ballot(&l.rule, &ctx.prefs);
        let verdict = od_check_biased(&x, &y, &ctx.prefs, oracle.structure(), favored.as_ref())?;
        let menu_index = |b: &Ballot| oracle.menu().iter().position(|m| m == b);
        let level = match (menu_index(&x), menu_index(&y)) {
            (Some(xi), Some(yi)) => oracle.dominance_level(xi, yi),
            _ => verdict.level,
        };
        #[derive(serde::Serialize)]
        struct Pair<'a> {
            voter: usize,
            ballot: String,
            against: String,
            dominates: bool,
            level: Option<usize>,
            set_semantics: bool,
            graph: &'a crate::dominance::DominanceVerdict,
        }
        let p = Pair {
            voter: i,
            ballot: fmt(&x),
            against: fmt(&y),
            dominates: level.is_some(),
            level,
            set_semantics: oracle.uses_set_semantics(),
            graph: &verdict,
        };
        match s.format {
            OutputFormat::Text => {
                match level {
                    Some(j) => writeln!(out, "{} dominates {} at level {j}", p.ballot, p.against)?,
                    None => writeln!(out, "{} does not dominate {}", p.ballot, p.against)?,
                }
                let trace: Vec<String> = verdict
                    .trace
                    .iter()
                    .map(|t| format!("(safe {}, pivot {})", t.safe, t.pivot))
                    .collect();
                writeln!(out, "trace: {}", trace.join(" "))?;
                if oracle.uses_set_semantics() {
                    writeln!(out, "sets lack the sharp pivot property; verdict uses the sets directly")?;
                }
            }
            OutputFormat::Records => writeln!(out, "{}", record("verdict", &p))?,
        }
        return Ok(());
    }
    let od = oracle.od_indices();
    let uod: Vec<usize> = oracle.uod_indices().into_iter().map(|(x, _)| x).collect();
    #[derive(serde::Serialize)]
    struct Entry {
        ballot: String,
        level: usize,
        undominated: bool,
    }
    let entries: Vec<Entry> = od
        .iter()
        .map(|&(x, level)| Entry {
            ballot: fmt(&oracle.menu()[x]),
            level,
            undominated: uod.contains(&x),
        })
        .collect();
    match s.format {
        OutputFormat::Text => {
            writeln!(
                out,
                "voter {i}: {} with ballot {}",
                format_ranking(&ctx.prefs, names),
                fmt(&ctx.current)
            )?;
            if entries.is_empty() {
                writeln!(out, "no ballot dominates the current one")?;
            }
            for e in &entries {
                writeln!(
                    out,
                    "{} dominates at level {}{}",
                    e.ballot,
                    e.level,
                    if e.undominated { ", undominated" } else { "" }
                )?;
            }
        }
        OutputFormat::Records => {
            for e in &entries {
                writeln!(out, "{}", record("dominating", e))?;
            }
        }
    }
    Ok(())
}

/// Instance counts for `verify --quick`.
pub fn quick_params(seed: u64) -> VerifyParams {
    VerifyParams {
        seed,
        lemma_instances: 300,
        oracle_max_total: 3,
        nash_max_n: 3,
        ld_max_m: 3,
        ld_max_total: 5,
        ld_max_radius: 2,
        justify_samples: 100,
        leader_states: 3,
        topology_max_m: 3,
        topology_max_total: 10,
        topology_max_radius: 3,
        spp_samples: 5,
        spp_n: 200,
        spp_radii_percent: vec![1, 2],
        converge_trials: 20,
        converge_max_n: 8,
        converge_max_m: 4,
        converge_max_radius: 2,
        exhaustive_instances: 3,
        exhaustive_max_n: 4,
        exhaustive_max_m: 3,
        negative_trials: 300,
    }
}

fn verify(s: &Settings, a: &VerifyArgs, out: &mut dyn Write) -> Result<()> {
    if a.list {
        for t in suites::TARGETS {
            writeln!(out, "{t}")?;
        }
        return Ok(());
    }
    let seed = s.seed.unwrap_or(s.cfg.verify.seed);
    let mut params = if a.quick { quick_params(seed) } else { s.cfg.verify.clone() };
    params.seed = seed;
    let targets: Vec<String> = if a.targets.is_empty() || a.targets.iter().any(|t| t == "all") {
        suites::TARGETS.iter().map(|t| t.to_string()).collect()
    } else {
        a.targets.clone()
    };
    let mut reports: Vec<SuiteReport> = Vec::new();
    for t in &targets {
        for r in suites::verify(t, &params, &s.limits)? {
            print_report(s, &r, out)?;
            reports.push(r);
        }
    }
    write_artifact(s, "verify.json", &serde_json::to_string_pretty(&reports).expect("json"))?;
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.target.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::Verification(format!(
            "{} of {} checks failed: {}",
            failed.len(),
            reports.len(),
            failed.join(", ")
        )))
    }
}

fn print_report(s: &Settings, r: &SuiteReport, out: &mut dyn Write) -> Result<()> {
    match s.format {
        OutputFormat::Records => writeln!(out, "{}", record("suite", r))?,
        OutputFormat::Text => {
            let status = match (r.passed, r.vacuous) {
                (true, false) => "PASS",
                (true, true) => "PASS (vacuous)",
                (false, _) => "FAIL",
            };
            writeln!(
                out,
                "{status} {} checked={} skipped={} failures={}",
                r.target, r.checked, r.skipped, r.failures
            )?;
            for n in &r.notes {
                writeln!(out, "  {n}")?;
            }
            for w in r.witnesses.iter().take(3) {
                writeln!(out, "  witness: {w}")?;
            }
        }
    }
    Ok(())
}

fn parse_policy(text: &str) -> Result<MovePolicy> {
    match text {
        "best-uod" => Ok(MovePolicy::BestUod),
        "any-od" => Ok(MovePolicy::AnyOd),
        t => Err(Error::config(format!("unknown policy `{t}`; use best-uod or any-od"))),
    }
}

fn parse_scheduler(text: &str, seed: u64) -> Result<Scheduler> {
    match text {
        "round-robin" => Ok(Scheduler::RoundRobin),
        "random" => Ok(Scheduler::RandomSeeded { seed }),
        t => Err(Error::config(format!("unknown scheduler `{t}`; use round-robin or random"))),
    }
}

fn run_cmd(s: &Settings, a: &RunArgs, out: &mut dyn Write) -> Result<()> {
    let policy = match &a.policy {
        Some(p) => parse_policy(p)?,
        None => s.cfg.dynamics.policy.clone(),
    };
    if a.election.election.is_none() && s.cfg.election.is_none() {
        let Some(mut batch) = s.cfg.batch.clone() else {
            return Err(Error::config("run needs --election or a [batch] section in the config"));
        };
        if let Some(seed) = s.seed {
            batch.seed = seed;
        }
        batch.policy = policy;
        batch.mode = s.mode;
        batch.limits = s.limits;
        let rep = batch_verify(&batch)?;
        match s.format {
            OutputFormat::Text => {
                writeln!(
                    out,
                    "{} trials: converged {}, cycles {}, truncated {}, errors {}, unverified {}",
                    rep.trials, rep.converged, rep.cycles, rep.truncated, rep.errors, rep.unverified
                )?;
                if let Some(st) = &rep.steps {
                    writeln!(out, "steps to converge: min {}, median {}, max {}", st.min, st.median, st.max)?;
                }
                for e in &rep.error_messages {
                    writeln!(out, "  error: {e}")?;
                }
            }
            OutputFormat::Records => writeln!(out, "{}", record("batch", &rep))?,
        }
        write_artifact(s, "batch.json", &serde_json::to_string_pretty(&rep).expect("json"))?;
        return Ok(());
    }
    let l = load(s, &a.election)?;
    let names = &l.election.candidates;
    let profile = l
        .election
        .voters
        .iter()
        .map(|v| v.ballot.clone())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::config("run needs a current ballot for every voter"))?;
    let n = profile.len() as u64;
    let model = l.model_spec.resolve(n)?;
    let mut game = Game::new(
        l.rule,
        l.election.voters.iter().map(|v| v.prefs.clone()).collect(),
        vec![model; profile.len()],
    )?;
    game.mode = s.mode;
    game.limits = s.limits;
    let fmt = |b: &Ballot| format_ballot(b, &l.rule, names);
    if a.exhaustive {
        let e = explore_all(&game, &[profile], &policy, usize::MAX)?;
        match s.format {
            OutputFormat::Text => {
                writeln!(out, "{} profiles reachable", e.profiles)?;
                match &e.cycle {
                    None => writeln!(out, "no cycle")?,
                    Some(c) => {
                        writeln!(out, "cycle of length {}:", c.len() - 1)?;
                        for p in c {
                            writeln!(out, "  {}", p.iter().map(fmt).collect::<Vec<_>>().join(" "))?;
                        }
                    }
                }
            }
            OutputFormat::Records => writeln!(out, "{}", record("exploration", &e))?,
        }
        return Ok(());
    }
    let sched_text = a
        .scheduler
        .clone()
        .or_else(|| s.cfg.dynamics.scheduler.clone())
        .unwrap_or_else(|| "round-robin".into());
    let scheduler = parse_scheduler(&sched_text, s.seed.unwrap_or(0))?;
    let cap = a.step_cap.or(s.cfg.dynamics.step_cap);
    let t = run(&game, &profile, &scheduler, &policy, cap)?;
    match s.format {
        OutputFormat::Text => {
            for mv in &t.moves {
                writeln!(
                    out,
                    "step {}: voter {} {} -> {}, tally {}",
                    mv.step,
                    mv.voter,
                    fmt(&mv.old),
                    fmt(&mv.new),
                    mv.aggregate
                )?;
            }
            match t.status {
                Status::Converged { steps } => {
                    let w = crate::election::winner(&aggregate(&t.terminal(), l.rule.m)?)?;
                    writeln!(out, "converged after {steps} steps, winner {}", names[w])?;
                }
                Status::Cycle { period, first_repeat } => {
                    writeln!(out, "cycle of period {period} from step {first_repeat}")?
                }
                Status::Truncated { cap } => writeln!(out, "stopped at the step cap {cap}")?,
            }
        }
        OutputFormat::Records => {
            for mv in &t.moves {
                writeln!(out, "{}", record("move", mv))?;
            }
            writeln!(out, "{}", record("status", &t.status))?;
        }
    }
    write_artifact(s, "trajectory.json", &serde_json::to_string_pretty(&t).expect("json"))?;
    Ok(())
}

/// Reads an election file, for the examples.
pub fn read_election(path: &Path) -> Result<Election> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_election(&text)
}
