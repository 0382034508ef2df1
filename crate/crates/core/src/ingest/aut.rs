use std::collections::HashMap;
use std::fmt::Write;

use crate::dfa::StateId;
use crate::error::LtsParseError;
use crate::lts::{Lts, LtsTransition};

fn err(line: usize, message: impl Into<String>) -> LtsParseError {
    LtsParseError {
        line,
        message: message.into(),
    }
}

/// Strips one pair of surrounding parentheses.
fn parenthesized(body: &str, line: usize) -> Result<&str, LtsParseError> {
    body.trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| err(line, "expected a parenthesized tuple"))
}

fn number(field: &str, what: &str, line: usize) -> Result<usize, LtsParseError> {
    field
        .trim()
        .parse()
        .map_err(|_| err(line, format!("invalid {what} `{}`", field.trim())))
}

fn state(field: &str, what: &str, num_states: usize, line: usize) -> Result<StateId, LtsParseError> {
    let id = number(field, what, line)?;
    if id >= num_states {
        return Err(err(
            line,
            format!("{what} {id} out of range for {num_states} states"),
        ));
    }
    Ok(id as StateId)
}

/// Reads the line-oriented transition format:
///
/// ```text
/// des (<initial>, <num_transitions>, <num_states>)
/// (<src>, "<label>", <dst>)
/// ...
/// ```
///
/// Labels may also appear unquoted. They are interned in order of first
/// appearance. Blank lines are ignored.
pub fn parse_lts(text: &str) -> Result<Lts, LtsParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());

    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing `des` header"))?;
    let tuple = header
        .trim()
        .strip_prefix("des")
        .ok_or_else(|| err(hline, "header must start with `des`"))?;
    let fields: Vec<&str> = parenthesized(tuple, hline)?.split(',').collect();
    let [initial, declared, num_states] = fields[..] else {
        return Err(err(hline, "header needs three fields"));
    };
    let declared = number(declared, "transition count", hline)?;
    let num_states = number(num_states, "state count", hline)?;
    if num_states == 0 {
        return Err(err(hline, "an LTS needs at least one state"));
    }
    let initial = state(initial, "initial state", num_states, hline)?;

    let mut labels = Vec::new();
    let mut index = HashMap::new();
    let mut transitions = Vec::with_capacity(declared);
    let mut last_line = hline;
    for (line, raw) in lines {
        last_line = line;
        let body = parenthesized(raw, line)?;
        let (src, rest) = body
            .split_once(',')
            .ok_or_else(|| err(line, "expected `(src, label, dst)`"))?;
        let (label, dst) = rest
            .rsplit_once(',')
            .ok_or_else(|| err(line, "expected `(src, label, dst)`"))?;
        let label = label.trim();
        let label = match label.strip_prefix('"') {
            Some(inner) => inner
                .strip_suffix('"')
                .ok_or_else(|| err(line, "unterminated label"))?,
            None => label,
        };
        let source = state(src, "source state", num_states, line)?;
        let target = state(dst, "target state", num_states, line)?;
        let label = *index.entry(label.to_owned()).or_insert_with(|| {
            labels.push(label.to_owned());
            labels.len() - 1
        });
        transitions.push(LtsTransition {
            source,
            label,
            target,
        });
    }
    if transitions.len() != declared {
        return Err(err(
            last_line,
            format!(
                "header declares {declared} transitions but {} were found",
                transitions.len()
            ),
        ));
    }
    Ok(Lts {
        num_states,
        initial,
        labels,
        transitions,
    })
}

/// Writes `lts` in the format read by [`parse_lts`], labels quoted.
pub fn write_lts(lts: &Lts) -> String {
    let mut out = format!(
        "des ({}, {}, {})\n",
        lts.initial,
        lts.transitions.len(),
        lts.num_states
    );
    for t in &lts.transitions {
        let _ = writeln!(out, "({}, \"{}\", {})", t.source, lts.labels[t.label], t.target);
    }
    out
}
