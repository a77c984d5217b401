//! The election file format, ballot notation, and line-delimited records.
//!
//! ```text
//! # comment
//! candidates w b c d e
//! poll 29 26 22 17 6
//! e>d>c>b>w | 0 0 0 0 1
//! a=b>c>d>e
//! ```
//!
//! Each voter line ranks every candidate once, best first; `=` joins an
//! indifference class. An optional `| scores` column gives the current
//! ballot.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::election::{Ballot, Candidate, PreferenceOrder, RuleKind, ScoreVector, VotingRule};
use crate::error::{Error, Result};
use crate::graph::name_of;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Voter {
    pub prefs: PreferenceOrder,
    pub ballot: Option<Ballot>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Election {
    pub candidates: Vec<String>,
    pub poll: Option<ScoreVector>,
    pub voters: Vec<Voter>,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

/// Splits on whitespace, keeping 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_numbers(items: &[(usize, &str)], line: usize) -> Result<Vec<u32>> {
    items
        .iter()
        .map(|&(col, t)| {
            t.parse::<u32>()
                .map_err(|_| parse_err(line, col, format!("expected a non-negative integer, found `{t}`")))
        })
        .collect()
}

fn parse_ranking(
    text: &str,
    offset: usize,
    line: usize,
    index: &HashMap<&str, Candidate>,
    names: &[String],
) -> Result<PreferenceOrder> {
    let m = names.len();
    let mut ranks = vec![u32::MAX; m];
    let mut pos = 0;
    for (rank, class) in text.split('>').enumerate() {
        for name in class.split('=') {
            let trimmed = name.trim();
            let col = offset + pos + (name.len() - name.trim_start().len()) + 1;
            pos += name.len() + 1;
            let &c = index
                .get(trimmed)
                .ok_or_else(|| parse_err(line, col, format!("unknown candidate `{trimmed}`")))?;
            if ranks[c] != u32::MAX {
                return Err(parse_err(line, col, format!("candidate `{trimmed}` appears twice")));
            }
            ranks[c] = rank as u32;
        }
    }
    if let Some(missing) = (0..m).find(|&c| ranks[c] == u32::MAX) {
        return Err(parse_err(
            line,
            offset + 1,
            format!("candidate `{}` is missing from the ranking", names[missing]),
        ));
    }
    PreferenceOrder::from_ranks(ranks)
}

pub fn parse_election(text: &str) -> Result<Election> {
    let mut candidates: Option<Vec<String>> = None;
    let mut index: HashMap<&str, Candidate> = HashMap::new();
    let mut poll = None;
    let mut voters = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(col, head)) = toks.first() else {
            continue;
        };
        match head {
            "candidates" => {
                if candidates.is_some() {
                    return Err(parse_err(line, col, "duplicate candidates line"));
                }
                let mut names = Vec::new();
                for &(c, name) in &toks[1..] {
                    if !valid_name(name) {
                        return Err(parse_err(line, c, format!("invalid candidate name `{name}`")));
                    }
                    if index.insert(name, names.len()).is_some() {
                        return Err(parse_err(line, c, format!("duplicate candidate `{name}`")));
                    }
                    names.push(name.to_string());
                }
                if names.len() < 2 {
                    return Err(parse_err(line, col, "need at least two candidates"));
                }
                candidates = Some(names);
            }
            "poll" => {
                let names = candidates
                    .as_ref()
                    .ok_or_else(|| parse_err(line, col, "poll before candidates"))?;
                if poll.is_some() {
                    return Err(parse_err(line, col, "duplicate poll line"));
                }
                let v = parse_numbers(&toks[1..], line)?;
                if v.len() != names.len() {
                    return Err(parse_err(line, col, format!("poll needs {} scores", names.len())));
                }
                poll = Some(ScoreVector::new(v));
            }
            _ => {
                let names = candidates
                    .as_ref()
                    .ok_or_else(|| parse_err(line, col, "expected a candidates line first"))?;
                let (rank_text, ballot_text) = match content.find('|') {
                    Some(bar) => (&content[..bar], Some((bar + 1, &content[bar + 1..]))),
                    None => (content, None),
                };
                let prefs = parse_ranking(rank_text, 0, line, &index, names)?;
                let ballot = match ballot_text {
                    None => None,
                    Some((offset, t)) => {
                        let toks: Vec<(usize, &str)> =
                            tokens(t).into_iter().map(|(c, s)| (c + offset, s)).collect();
                        let v = parse_numbers(&toks, line)?;
                        if v.len() != names.len() {
                            return Err(parse_err(
                                line,
                                offset + 1,
                                format!("ballot needs {} scores", names.len()),
                            ));
                        }
                        Some(Ballot::new(v))
                    }
                };
                voters.push(Voter { prefs, ballot });
            }
        }
    }
    let candidates = candidates.ok_or_else(|| parse_err(1, 1, "missing candidates line"))?;
    Ok(Election {
        candidates,
        poll,
        voters,
    })
}

/// Ranking text, best first.
pub fn format_ranking(prefs: &PreferenceOrder, names: &[String]) -> String {
    let m = prefs.m();
    let mut classes: Vec<(u32, Vec<Candidate>)> = Vec::new();
    let mut order: Vec<Candidate> = (0..m).collect();
    order.sort_by_key(|&c| (prefs.ranks()[c], c));
    for c in order {
        let r = prefs.ranks()[c];
        match classes.last_mut() {
            Some((lr, v)) if *lr == r => v.push(c),
            _ => classes.push((r, vec![c])),
        }
    }
    classes
        .iter()
        .map(|(_, v)| v.iter().map(|&c| name_of(names, c)).collect::<Vec<_>>().join("="))
        .collect::<Vec<_>>()
        .join(">")
}

fn join_numbers(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

pub fn write_election(e: &Election) -> String {
    let mut out = format!("candidates {}\n", e.candidates.join(" "));
    if let Some(p) = &e.poll {
        let _ = writeln!(out, "poll {}", join_numbers(p.scores()));
    }
    for v in &e.voters {
        out.push_str(&format_ranking(&v.prefs, &e.candidates));
        if let Some(b) = &v.ballot {
            let _ = write!(out, " | {}", join_numbers(b.scores()));
        }
        out.push('\n');
    }
    out
}

/// A ballot from the command line: a candidate name (the rule's
/// single-candidate ballot: a vote for it, or a veto of it), `abstain`, or
/// comma-separated scores.
pub fn parse_ballot(text: &str, rule: &VotingRule, names: &[String]) -> Result<Ballot> {
    let t = text.trim();
    let m = rule.m;
    if t == "abstain" {
        return Ok(Ballot::abstain(m));
    }
    if let Some(c) = names.iter().position(|n| n == t) {
        return match rule.kind {
            RuleKind::Plurality => Ok(Ballot::single(m, c)),
            RuleKind::Veto => Ok(Ballot::veto(m, c)),
            _ => Err(Error::config(format!(
                "a bare candidate name is ambiguous under {rule}; give scores"
            ))),
        };
    }
    let parts: Vec<&str> = t.split(',').map(str::trim).collect();
    let v = parts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            p.parse::<u32>()
                .map_err(|_| parse_err(1, i + 1, format!("`{p}` is neither a candidate nor a score")))
        })
        .collect::<Result<Vec<_>>>()?;
    if v.len() != m {
        return Err(Error::structural(format!("ballot `{t}` needs {m} scores")));
    }
    let b = Ballot::new(v);
    rule.check_ballot(&b, true)?;
    Ok(b)
}

/// Inverse of [`parse_ballot`]: a name for single-candidate ballots,
/// `abstain`, otherwise comma-separated scores.
pub fn format_ballot(b: &Ballot, rule: &VotingRule, names: &[String]) -> String {
    if b.is_abstain() {
        return "abstain".into();
    }
    let m = rule.m;
    let single = match rule.kind {
        RuleKind::Plurality => (0..m).find(|&c| *b == Ballot::single(m, c)),
        RuleKind::Veto => (0..m).find(|&c| *b == Ballot::veto(m, c)),
        _ => None,
    };
    match single {
        Some(c) => name_of(names, c),
        None => b.scores().iter().map(u32::to_string).collect::<Vec<_>>().join(","),
    }
}

/// One line-delimited JSON record, tagged with its kind.
pub fn record<T: Serialize>(kind: &str, value: &T) -> String {
    #[derive(Serialize)]
    struct Tagged<'a, T> {
        record: &'a str,
        #[serde(flatten)]
        value: &'a T,
    }
    serde_json::to_string(&Tagged { record: kind, value }).expect("records serialize")
}

/// Candidate names joined for text output.
pub fn names_of(set: impl IntoIterator<Item = Candidate>, names: &[String]) -> String {
    set.into_iter().map(|c| name_of(names, c)).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG: &str = "candidates w b c d e\npoll 29 26 22 17 6\ne>d>c>b>w | 0 0 0 0 1\n";

    #[test]
    fn parses_the_example_voter() {
        let e = parse_election(FIG).unwrap();
        assert_eq!(e.candidates, vec!["w", "b", "c", "d", "e"]);
        assert_eq!(e.poll, Some(ScoreVector::new(vec![29, 26, 22, 17, 6])));
        let v = &e.voters[0];
        assert_eq!(v.prefs, PreferenceOrder::strict(&[4, 3, 2, 1, 0]).unwrap());
        assert_eq!(v.ballot, Some(Ballot::single(5, 4)));
    }

    #[test]
    fn weak_orders_and_round_trip() {
        let text = "candidates a b c\n# comment\n\na = b > c\nc>b>a | 0 1 0\n";
        let e = parse_election(text).unwrap();
        assert_eq!(e.voters[0].prefs.ranks(), &[0, 0, 1]);
        let written = write_election(&e);
        assert_eq!(written, "candidates a b c\na=b>c\nc>b>a | 0 1 0\n");
        assert_eq!(parse_election(&written).unwrap(), e);
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_election("candidates a b c\na>b\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(err.to_string().contains("`c` is missing"));
        let err = parse_election("candidates a b c\na>x>c\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                column: 3,
                message: "unknown candidate `x`".into()
            }
        );
        assert!(matches!(
            parse_election("candidates a a\n").unwrap_err(),
            Error::Parse { line: 1, column: 14, .. }
        ));
        assert!(matches!(
            parse_election("candidates a b\na>b | 1 x\n").unwrap_err(),
            Error::Parse { line: 2, column: 9, .. }
        ));
        assert!(parse_election("a>b\n").is_err());
    }

    #[test]
    fn ballots_from_text() {
        let names: Vec<String> = ["w", "b", "c"].iter().map(|s| s.to_string()).collect();
        let p = VotingRule::plurality(3);
        assert_eq!(parse_ballot("b", &p, &names).unwrap(), Ballot::single(3, 1));
        assert_eq!(parse_ballot("c", &VotingRule::veto(3), &names).unwrap(), Ballot::veto(3, 2));
        assert_eq!(parse_ballot("0,0,1", &p, &names).unwrap(), Ballot::single(3, 2));
        assert!(parse_ballot("1,1,0", &p, &names).is_err());
        assert!(parse_ballot("b", &VotingRule::borda(3), &names).is_err());
    }

    #[test]
    fn records_are_flat_json() {
        #[derive(Serialize)]
        struct R {
            a: u32,
        }
        assert_eq!(record("x", &R { a: 1 }), r#"{"record":"x","a":1}"#);
    }
}
