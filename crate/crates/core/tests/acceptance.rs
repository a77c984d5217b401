//! One PASS/FAIL line per acceptance criterion, at full scale.
//!
//! Criteria listed in `KNOWN_FAILING` are claims that do not hold on the
//! instances checked here; they print FAIL with their counts and leave the
//! test green. Any other criterion failing fails the test.

use std::collections::BTreeSet;
use std::hint::black_box;
use std::path::Path;
use std::time::Instant;

use pivot_vote::cli::main_with;
use pivot_vote::config::ModelSpec;
use pivot_vote::election::outcome;
use pivot_vote::epistemic::{derive_structure, pivot_graph, upward_closed_under};
use pivot_vote::suites::{self, SuiteReport, VerifyParams};
use pivot_vote::{
    od_check, uod_set, Ballot, Bias, Limits, PivotGraph, PivotGraphStructure, PreferenceOrder,
    RuleKind, ScoreVector, VoterContext, VotingRule,
};

/// Justification, topology and convergence claims with counterexamples, and
/// the SPP rate, which falls just short of its threshold.
const KNOWN_FAILING: [u8; 4] = [7, 9, 10, 11];

/// Per-unit od_check time may grow by at most this factor from a smaller
/// `m²·k` to a larger one.
const SLOPE_TOLERANCE: f64 = 2.0;
const TIMING_SAMPLES: usize = 7;
const UNITS_PER_SAMPLE: u64 = 4_000_000;

struct Outcome {
    id: u8,
    passed: bool,
    detail: String,
}

fn outcome_of(id: u8, reports: &[SuiteReport]) -> Outcome {
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed || r.vacuous)
        .map(|r| match (reports.len(), r.notes.first()) {
            (1, Some(note)) => format!("{}: {note}", r.target),
            _ => format!("{} ({} of {})", r.target, r.failures, r.checked),
        })
        .collect();
    let checked: u64 = reports.iter().map(|r| r.checked).sum();
    Outcome {
        id,
        passed: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} suites, {checked} checks", reports.len())
        } else {
            format!("failing: {}", failed.join(", "))
        },
    }
}

// Brute-force helpers, independent of the library's enumeration code.

fn argmax_lowest(s: &[u32]) -> usize {
    let mut best = 0;
    for c in 1..s.len() {
        if s[c] > s[best] {
            best = c;
        }
    }
    best
}

fn plurality_winner(s: &[u32], vote: usize) -> usize {
    let mut t = s.to_vec();
    t[vote] += 1;
    argmax_lowest(&t)
}

/// States of the same total with `l1 < bound` around `center`.
fn open_l1_ball(center: &[u32], bound: u32) -> Vec<Vec<u32>> {
    let m = center.len();
    let total: i64 = center.iter().map(|&x| x as i64).sum();
    let reach = bound as i64;
    let mut out = Vec::new();
    let mut cur = vec![0i64; m];
    fn rec(
        i: usize,
        cur: &mut Vec<i64>,
        center: &[u32],
        reach: i64,
        total: i64,
        bound: i64,
        out: &mut Vec<Vec<u32>>,
    ) {
        let m = center.len();
        if i == m - 1 {
            let last = total - cur[..m - 1].iter().sum::<i64>();
            if last < 0 {
                return;
            }
            cur[m - 1] = last;
            let l1: i64 = cur.iter().zip(center).map(|(&a, &b)| (a - b as i64).abs()).sum();
            if l1 < bound {
                out.push(cur.iter().map(|&x| x as u32).collect());
            }
            return;
        }
        let c = center[i] as i64;
        for v in (c - reach).max(0)..=c + reach {
            cur[i] = v;
            rec(i + 1, cur, center, reach, total, bound, out);
        }
    }
    rec(0, &mut cur, center, reach, total, 2 * reach, &mut out);
    out
}

fn edges_of(states: &[Vec<u32>], m: usize) -> BTreeSet<(usize, usize)> {
    let mut edges = BTreeSet::new();
    for s in states {
        let winners: BTreeSet<usize> = (0..m).map(|v| plurality_winner(s, v)).collect();
        for &a in &winners {
            for &b in &winners {
                if a < b {
                    edges.insert((a, b));
                }
            }
        }
    }
    edges
}

const FIG2_POLL: [u32; 5] = [29, 26, 22, 17, 6];
const FIG2_OTHERS: [u32; 5] = [29, 26, 22, 17, 5];
const FIG2_PERCENT: [u32; 4] = [1, 3, 7, 17];

fn fig2_balls() -> Vec<Vec<Vec<u32>>> {
    // EMD is half the l1 distance; fractional radii are open balls.
    FIG2_PERCENT.iter().map(|&p| open_l1_ball(&FIG2_OTHERS, p)).collect()
}

fn fig2_prefs() -> PreferenceOrder {
    PreferenceOrder::strict(&[4, 3, 2, 1, 0]).unwrap()
}

fn fig2_structure() -> PivotGraphStructure {
    let ctx = VoterContext::from_poll(
        &ScoreVector::new(FIG2_POLL.to_vec()),
        Ballot::single(5, 4),
        fig2_prefs(),
        VotingRule::plurality(5),
    )
    .unwrap();
    let model = ModelSpec::parse("emd:1%,3%,7%,17%").unwrap().resolve(100).unwrap();
    derive_structure(&model, &ctx, &Limits::default()).unwrap()
}

fn criterion_1() -> Outcome {
    let s = ScoreVector::new(vec![29, 25, 22, 17, 6]);
    let rule = VotingRule::plurality(5);
    let mut all_w = true;
    for v in 0..5 {
        let lib = outcome(&rule, &s, &Ballot::single(5, v)).unwrap();
        all_w &= lib == 0 && plurality_winner(s.scores(), v) == 0;
    }
    let g = pivot_graph(&[s], &rule, &Limits::default()).unwrap();
    Outcome {
        id: 1,
        passed: all_w && g.is_edgeless(),
        detail: format!("every ballot elects w: {all_w}; pivot graph edges {:?}", g.edges()),
    }
}

fn criterion_2() -> Outcome {
    let structure = fig2_structure();
    let lib: Vec<BTreeSet<(usize, usize)>> =
        structure.levels().iter().map(|g| g.edges().into_iter().collect()).collect();
    let brute: Vec<BTreeSet<(usize, usize)>> = fig2_balls().iter().map(|b| edges_of(b, 5)).collect();
    let all: BTreeSet<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    let frozen: Vec<BTreeSet<(usize, usize)>> = vec![
        BTreeSet::new(),
        [(0, 1)].into(),
        [(0, 1), (0, 2), (1, 2)].into(),
        all.iter().copied().filter(|&e| e != (3, 4)).collect(),
    ];
    let strict = lib.windows(2).all(|w| w[0].is_subset(&w[1]) && w[0] != w[1]);
    let first = lib.iter().find(|l| !l.is_empty()).cloned().unwrap_or_default();
    let order = ScoreVector::new(FIG2_OTHERS.to_vec()).score_order();
    let upward = upward_closed_under(&structure, &order);
    // Independent upward-closure check on the frozen edges.
    let rank = |c: usize| order.iter().position(|&x| x == c).unwrap();
    let upward_brute = frozen.iter().all(|l| {
        l.iter().all(|&(a, b)| {
            [(a, b), (b, a)].iter().all(|&(c, c1)| {
                (0..5).filter(|&c2| c2 != c && rank(c2) < rank(c1)).all(|c2| l.contains(&(c.min(c2), c.max(c2))))
            })
        })
    });
    let passed = lib == frozen && brute == frozen && strict && first == [(0, 1)].into() && upward && upward_brute;
    Outcome {
        id: 2,
        passed,
        detail: format!(
            "levels {:?}; brute force agrees {}; strict nesting {strict}; upward closed {upward}",
            lib.iter().map(|l| l.len()).collect::<Vec<_>>(),
            brute == lib
        ),
    }
}

/// Literal ordinal dominance on the enumerated balls.
fn brute_od(x: usize, y: usize, balls: &[Vec<Vec<u32>>], prefs: &PreferenceOrder) -> Option<usize> {
    balls.iter().position(|ball| {
        let (mut better, mut worse) = (false, false);
        for s in ball {
            let (wx, wy) = (plurality_winner(s, x), plurality_winner(s, y));
            better |= prefs.prefers(wx, wy);
            worse |= prefs.prefers(wy, wx);
        }
        better && !worse
    }).map(|j| j + 1)
}

fn criterion_3() -> Outcome {
    let structure = fig2_structure();
    let prefs = fig2_prefs();
    let single = |c| Ballot::single(5, c);
    let level = |x, y| od_check(&single(x), &single(y), &prefs, &structure).unwrap().level;
    let mut ok = level(2, 4) == Some(3);
    for x in [0, 2, 3, 4] {
        ok &= level(1, x) == Some(2);
    }
    let ctx = VoterContext::from_poll(
        &ScoreVector::new(FIG2_POLL.to_vec()),
        single(4),
        prefs.clone(),
        VotingRule::plurality(5),
    )
    .unwrap();
    let model = ModelSpec::parse("emd:1%,3%,7%,17%").unwrap().resolve(100).unwrap();
    let uod = uod_set(&ctx, &model, &Limits::default()).unwrap();
    ok &= uod == vec![single(1)];

    let balls = fig2_balls();
    let mut brute = brute_od(2, 4, &balls, &prefs) == Some(3);
    for x in [0, 2, 3, 4] {
        brute &= brute_od(1, x, &balls, &prefs) == Some(2);
    }
    let dominating: Vec<usize> = (0..5).filter(|&x| brute_od(x, 4, &balls, &prefs).is_some()).collect();
    let undominated: Vec<usize> = dominating
        .iter()
        .copied()
        .filter(|&x| (0..5).all(|y| brute_od(y, x, &balls, &prefs).is_none()))
        .collect();
    brute &= undominated == [1];
    Outcome {
        id: 3,
        passed: ok && brute,
        detail: format!("library facts hold {ok}; brute force facts hold {brute}; uod {:?}", uod),
    }
}

fn criterion_12() -> Outcome {
    let mut points = Vec::new();
    for m in [5usize, 10, 20, 40] {
        for k in [1usize, 2, 4, 8] {
            let s = PivotGraphStructure::new(vec![PivotGraph::complete(m); k]).unwrap();
            let order: Vec<usize> = (0..m).collect();
            let prefs = PreferenceOrder::strict(&order).unwrap();
            let (x, y) = (Ballot::single(m, m - 1), Ballot::single(m, 0));
            let units = (m * m * k) as u64;
            let reps = (UNITS_PER_SAMPLE / units).max(1);
            let mut samples: Vec<f64> = (0..TIMING_SAMPLES)
                .map(|_| {
                    let start = Instant::now();
                    for _ in 0..reps {
                        black_box(od_check(black_box(&x), black_box(&y), &prefs, black_box(&s)).unwrap());
                    }
                    start.elapsed().as_secs_f64() / (reps * units) as f64
                })
                .collect();
            samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
            points.push((units, samples[TIMING_SAMPLES / 2]));
        }
    }
    points.sort_by_key(|p| p.0);
    let mut worst = 0.0f64;
    for (i, &(ui, ti)) in points.iter().enumerate() {
        for &(uj, tj) in &points[i + 1..] {
            if uj > ui {
                worst = worst.max(tj / ti);
            }
        }
    }
    Outcome {
        id: 12,
        passed: worst <= SLOPE_TOLERANCE,
        detail: format!(
            "largest per-unit growth {worst:.2}x (limit {SLOPE_TOLERANCE}x); ns per unit from {:.3} to {:.3}",
            points.first().unwrap().1 * 1e9,
            points.last().unwrap().1 * 1e9
        ),
    }
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["pivot-vote"];
    full.extend_from_slice(args);
    let code = main_with(full, &mut out, &mut err);
    out.extend_from_slice(&err);
    (code, out)
}

fn dir_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

fn criterion_13() -> Outcome {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    let fig2 = format!("{data}/figure2.txt");
    let five = format!("{data}/five_voters.txt");
    let commands: Vec<Vec<&str>> = vec![
        vec!["derive", "--election", &fig2, "--model", "emd:1%,3%,7%,17%"],
        vec!["--format", "records", "dominate", "--election", &fig2, "--model", "emd:1%,3%,7%,17%"],
        vec!["--seed", "3", "verify", "--quick", "lemma-partial-order", "prop-justify-not-last", "thm-spp"],
        vec!["--seed", "4", "run", "--election", &five, "--model", "linf:1,2", "--scheduler", "random"],
        vec!["run", "--exhaustive", "--election", &five, "--model", "linf:1,2"],
    ];
    let mut mismatches = Vec::new();
    for cmd in &commands {
        let runs: Vec<_> = (0..2)
            .map(|_| {
                let dir = tempfile::tempdir().unwrap();
                let mut args = vec!["--out", dir.path().to_str().unwrap()];
                args.extend(cmd.iter().copied());
                let (code, text) = run_cli(&args);
                (code, text, dir_bytes(dir.path()))
            })
            .collect();
        if runs[0] != runs[1] || runs[0].2.is_empty() && cmd.contains(&"derive") {
            mismatches.push(cmd.join(" "));
        }
    }
    Outcome {
        id: 13,
        passed: mismatches.is_empty(),
        detail: if mismatches.is_empty() {
            format!("{} commands reproduced byte for byte, output files included", commands.len())
        } else {
            format!("differing: {}", mismatches.join("; "))
        },
    }
}

fn main() {
    let p = VerifyParams::default();
    let l = Limits::default();
    let mut outcomes = vec![criterion_1(), criterion_2(), criterion_3()];
    outcomes.push(outcome_of(4, &[suites::lemma_partial_order(&p, &l).unwrap()]));
    outcomes.push(outcome_of(5, &[suites::algorithm_oracle_equivalence(&p, &l).unwrap()]));
    outcomes.push(outcome_of(6, &suites::observation_full_information(&p, &l).unwrap()));
    let mut justify = vec![
        suites::justify_not_last(&l).unwrap(),
        suites::justify_local_dominance(&p, &l).unwrap(),
        suites::justify_biased(Bias::Truth, &p, &l).unwrap(),
        suites::justify_biased(Bias::Lazy, &p, &l).unwrap(),
    ];
    justify.extend(suites::justify_t_star(&p, &l).unwrap());
    justify.push(suites::t_pragmatist_witness(&p, &l).unwrap());
    outcomes.push(outcome_of(7, &justify));
    outcomes.push(outcome_of(8, &[suites::leader_rule_totality(&p, &l).unwrap()]));
    outcomes.push(outcome_of(9, &suites::metric_topology(&p, &l).unwrap()));
    let mut converge = suites::convergence(RuleKind::Plurality, &p, &l).unwrap();
    converge.extend(suites::convergence(RuleKind::Veto, &p, &l).unwrap());
    converge.push(suites::negative_control(&p, &l).unwrap());
    outcomes.push(outcome_of(10, &converge));
    outcomes.push(outcome_of(11, &[suites::spp_empirical(&p, &l).unwrap()]));
    outcomes.push(criterion_12());
    outcomes.push(criterion_13());

    let mut unexpected = Vec::new();
    for o in &outcomes {
        println!("criterion {:>2}: {} {}", o.id, if o.passed { "PASS" } else { "FAIL" }, o.detail);
        if !o.passed && !KNOWN_FAILING.contains(&o.id) {
            unexpected.push(o.id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria failed unexpectedly: {unexpected:?}");
        std::process::exit(1);
    }
}
