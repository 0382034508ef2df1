use std::fmt::Write;

use crate::dfa::{Dfa, StateId};
use crate::error::{FormatError, Section};
use crate::partition::{canonicalize, Partition};

pub const FORMAT_VERSION: u32 = 1;

/// Serializes `dfa`:
///
/// ```text
/// DFA 1 <n> <k> <initial>
/// ACC <count> <sorted accepting ids...>
/// 0: <delta[0][0]> ... <delta[0][n-1]>
/// ...
/// ```
pub fn write_dfa(dfa: &Dfa) -> String {
    let n = dfa.num_states();
    let mut out = String::with_capacity(32 + (dfa.alphabet_size() + 1) * n * 6);
    let _ = writeln!(
        out,
        "DFA {FORMAT_VERSION} {n} {} {}",
        dfa.alphabet_size(),
        dfa.initial()
    );
    let _ = write!(out, "ACC {}", dfa.num_accepting());
    for q in dfa.accepting_states() {
        let _ = write!(out, " {q}");
    }
    out.push('\n');
    for (a, row) in dfa.rows().iter().enumerate() {
        let _ = write!(out, "{a}:");
        for t in row {
            let _ = write!(out, " {t}");
        }
        out.push('\n');
    }
    out
}

fn malformed(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Malformed {
        line,
        message: message.into(),
    }
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T, FormatError> {
    tok.parse()
        .map_err(|_| malformed(line, format!("invalid {what} `{tok}`")))
}

/// Parses the format written by [`write_dfa`].
pub fn read_dfa(text: &str) -> Result<Dfa, FormatError> {
    let mut lines = text.split('\n').enumerate().map(|(i, l)| (i + 1, l));
    let mut next = |section| match lines.next() {
        Some((_, "")) | None => Err(FormatError::Missing(section)),
        Some((no, line)) => Ok((no, line)),
    };

    let (no, header) = next(Section::Header)?;
    let tokens: Vec<&str> = header.split(' ').collect();
    if tokens.first() != Some(&"DFA") {
        return Err(malformed(no, "expected `DFA` header"));
    }
    if tokens.get(1) != Some(&"1") {
        return Err(FormatError::Version(tokens.get(1).unwrap_or(&"").to_string()));
    }
    let [_, _, n, k, initial] = tokens[..] else {
        return Err(malformed(no, "header needs `DFA 1 <n> <k> <initial>`"));
    };
    let n: usize = parse_num(n, no, "state count")?;
    let k: usize = parse_num(k, no, "alphabet size")?;
    let initial: StateId = parse_num(initial, no, "initial state")?;

    let (no, acc) = next(Section::Accepting)?;
    let mut tokens = acc.split(' ');
    if tokens.next() != Some("ACC") {
        return Err(malformed(no, "expected `ACC` line"));
    }
    let count: usize = parse_num(tokens.next().unwrap_or(""), no, "accepting count")?;
    let accepting = tokens
        .map(|t| parse_num::<StateId>(t, no, "accepting state"))
        .collect::<Result<Vec<_>, _>>()?;
    if accepting.len() != count {
        return Err(malformed(
            no,
            format!("ACC declares {count} states but lists {}", accepting.len()),
        ));
    }
    if accepting.windows(2).any(|w| w[0] >= w[1]) {
        return Err(malformed(no, "accepting states must be strictly ascending"));
    }

    let mut delta = Vec::with_capacity(k);
    for a in 0..k {
        let (no, row) = next(Section::Transitions(a))?;
        let rest = row
            .strip_prefix(&format!("{a}:"))
            .ok_or_else(|| malformed(no, format!("expected row `{a}:`")))?;
        let targets = rest
            .split(' ')
            .skip(1)
            .map(|t| parse_num::<StateId>(t, no, "target"))
            .collect::<Result<Vec<_>, _>>()?;
        if targets.len() != n || (n > 0 && !rest.starts_with(' ')) {
            return Err(malformed(
                no,
                format!("row {a} has {} targets, expected {n}", targets.len()),
            ));
        }
        delta.push(targets);
    }
    for (no, line) in lines {
        if !line.is_empty() {
            return Err(malformed(no, "unexpected trailing content"));
        }
    }
    Ok(Dfa::from_accepting_list(n, delta, &accepting, initial)?)
}

/// One `<state> <block>` line per state, states ascending.
pub fn write_partition(p: &Partition) -> String {
    let mut out = String::with_capacity(p.len() * 12);
    for (q, b) in p.block().iter().enumerate() {
        let _ = writeln!(out, "{q} {b}");
    }
    out
}

pub fn read_partition(text: &str) -> Result<Partition, FormatError> {
    let mut raw = Vec::new();
    for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.is_empty()) {
        let no = i + 1;
        let (state, block) = line
            .split_once(' ')
            .ok_or_else(|| malformed(no, "expected `<state> <block>`"))?;
        let state: usize = parse_num(state, no, "state")?;
        if state != raw.len() {
            return Err(malformed(no, format!("expected state {}, found {state}", raw.len())));
        }
        raw.push(parse_num::<u32>(block, no, "block")?);
    }
    Ok(canonicalize(&raw))
}
