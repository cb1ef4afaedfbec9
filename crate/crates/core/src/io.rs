//! Input formats: Cayley tables as JSON, generator files, and DFA files.

use crate::error::{MonoidError, Result};
use crate::monoid_core::{DfaSpec, FiniteMonoid, GeneratorMap};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Cayley,
    Gens,
    Dfa,
}

impl InputFormat {
    pub fn parse(s: &str) -> Option<InputFormat> {
        match s {
            "cayley" => Some(InputFormat::Cayley),
            "gens" => Some(InputFormat::Gens),
            "dfa" => Some(InputFormat::Dfa),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            InputFormat::Cayley => "cayley",
            InputFormat::Gens => "gens",
            InputFormat::Dfa => "dfa",
        }
    }
}

#[derive(Deserialize)]
struct CayleyJson {
    order: usize,
    identity: usize,
    table: Vec<Vec<usize>>,
}

/// Parse an input into a monoid; `cap` bounds enumerations.
pub fn parse_input(text: &str, format: InputFormat, cap: usize) -> Result<FiniteMonoid> {
    match format {
        InputFormat::Cayley => parse_cayley(text),
        InputFormat::Gens => parse_gens(text, cap),
        InputFormat::Dfa => FiniteMonoid::from_dfa(&parse_dfa(text)?, cap),
    }
}

fn parse_cayley(text: &str) -> Result<FiniteMonoid> {
    let parsed: CayleyJson = serde_json::from_str(text).map_err(|e| MonoidError::ParseError {
        line: e.line(),
        col: e.column(),
        msg: e.to_string(),
    })?;
    if parsed.table.len() != parsed.order {
        return Err(MonoidError::ParseError {
            line: 1,
            col: 1,
            msg: format!(
                "table has {} rows but order is {}",
                parsed.table.len(),
                parsed.order
            ),
        });
    }
    FiniteMonoid::from_cayley_table(parsed.table, parsed.identity)
}

fn parse_gens(text: &str, cap: usize) -> Result<FiniteMonoid> {
    let mut degree: Option<usize> = None;
    let mut gens: Vec<GeneratorMap> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("points") => {
                let n = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err(ln, "expected `points N`"))?;
                degree = Some(n);
            }
            Some("map") => {
                let d = degree.ok_or_else(|| parse_err(ln, "`map` before `points`"))?;
                let mut images = Vec::with_capacity(d);
                for tok in parts {
                    if tok == "-" {
                        images.push(None);
                    } else {
                        let p: usize = tok
                            .parse()
                            .map_err(|_| parse_err(ln, &format!("bad point `{tok}`")))?;
                        images.push(Some(p));
                    }
                }
                if images.len() != d {
                    return Err(parse_err(
                        ln,
                        &format!("map has {} entries, expected {d}", images.len()),
                    ));
                }
                gens.push(GeneratorMap::partial(images));
            }
            Some(other) => {
                return Err(parse_err(ln, &format!("unknown directive `{other}`")));
            }
            None => {}
        }
    }
    let degree = degree.ok_or_else(|| parse_err(0, "missing `points N` header"))?;
    FiniteMonoid::from_generators(degree, &gens, cap)
}

fn parse_dfa(text: &str) -> Result<DfaSpec> {
    let mut states: Option<usize> = None;
    let mut alphabet: Vec<String> = Vec::new();
    let mut triples: Vec<(usize, String, usize, usize)> = Vec::new();
    let mut initial = None;
    let mut accepting = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "states" => {
                if toks.len() < 4 || toks[2] != "symbols" {
                    return Err(parse_err(ln, "expected `states N symbols a b ...`"));
                }
                states = Some(
                    toks[1]
                        .parse()
                        .map_err(|_| parse_err(ln, "bad state count"))?,
                );
                alphabet = toks[3..].iter().map(|s| s.to_string()).collect();
            }
            "initial" => {
                initial = Some(
                    toks.get(1)
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| parse_err(ln, "bad initial state"))?,
                );
            }
            "accepting" => {
                for t in &toks[1..] {
                    accepting.push(
                        t.parse()
                            .map_err(|_| parse_err(ln, "bad accepting state"))?,
                    );
                }
            }
            _ => {
                if toks.len() != 3 {
                    return Err(parse_err(ln, "expected `src sym dst`"));
                }
                let src: usize = toks[0].parse().map_err(|_| parse_err(ln, "bad source"))?;
                let dst: usize = toks[2].parse().map_err(|_| parse_err(ln, "bad target"))?;
                triples.push((src, toks[1].to_string(), dst, ln));
            }
        }
    }
    let state_count = states.ok_or_else(|| parse_err(0, "missing `states ... symbols ...`"))?;
    let mut transitions = vec![vec![usize::MAX; alphabet.len()]; state_count];
    for (src, sym, dst, ln) in triples {
        let si = alphabet
            .iter()
            .position(|s| *s == sym)
            .ok_or_else(|| parse_err(ln, &format!("unknown symbol `{sym}`")))?;
        if src >= state_count || dst >= state_count {
            return Err(parse_err(ln, "state out of range"));
        }
        if transitions[src][si] != usize::MAX {
            return Err(parse_err(
                ln,
                &format!("duplicate transition ({src}, {sym})"),
            ));
        }
        transitions[src][si] = dst;
    }
    for (q, row) in transitions.iter().enumerate() {
        for (si, &t) in row.iter().enumerate() {
            if t == usize::MAX {
                return Err(MonoidError::ParseError {
                    line: 0,
                    col: 0,
                    msg: format!("incomplete DFA: missing ({q}, {})", alphabet[si]),
                });
            }
        }
    }
    Ok(DfaSpec {
        state_count,
        alphabet,
        transitions,
        initial,
        accepting,
    })
}

fn parse_err(line0: usize, msg: &str) -> MonoidError {
    MonoidError::ParseError {
        line: line0 + 1,
        col: 1,
        msg: msg.to_string(),
    }
}

/// Emit a monoid as canonical Cayley JSON (sorted keys, row-major table).
pub fn to_cayley_json(m: &FiniteMonoid) -> String {
    let value = serde_json::json!({
        "order": m.order(),
        "identity": m.identity(),
        "table": m.table_rows(),
    });
    serde_json::to_string(&value).expect("serialization cannot fail")
}
