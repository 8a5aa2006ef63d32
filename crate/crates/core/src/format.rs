//! Line-based text formats.
//!
//! * LGF (level graph): `LGF 1`, then `v <id> <level>` and `e <id> <id>` lines
//!   in any order.
//! * LDF (level drawing): `LDF 1`, then `l <level> <id>...` per level.
//! * RPF (replay policy): `RPF 1`, `algo <name>`, then `class <lit> <bool>`,
//!   `entry <lit>`, `process <lit>` and `ref <level> <id>...` lines, where a
//!   literal is `<level>:<id><<id>`.
//!
//! Blank lines and lines starting with `#` are ignored. Serializers emit a
//! canonical order so that parse/serialize round-trips are byte-stable.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;

use crate::drawing::Drawing;
use crate::graph::{Edge, LevelGraph, Vertex};
use crate::greedy::GreedyPolicy;
use crate::pairs::PairLiteral;
use crate::vegraph::HHChoices;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

/// Yields `(line number, tokens)` for every content line after the header.
fn content_lines<'a>(
    text: &'a str,
    header: &str,
) -> Result<impl Iterator<Item = (usize, Vec<&'a str>)> + 'a, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, l))
            if l.split_whitespace().collect::<Vec<_>>()
                == header.split(' ').collect::<Vec<_>>() => {}
        Some((n, l)) => return Err(err(n, format!("expected header {header:?}, found {l:?}"))),
        None => return Err(err(0, format!("missing header {header:?}"))),
    }
    Ok(lines.map(|(n, l)| (n, l.split_whitespace().collect())))
}

fn parse_level(line: usize, s: &str) -> Result<u32, FormatError> {
    s.parse().map_err(|_| err(line, format!("bad level {s:?}")))
}

pub fn parse_lgf(text: &str) -> Result<LevelGraph, FormatError> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (n, toks) in content_lines(text, "LGF 1")? {
        match toks.as_slice() {
            ["v", id, level] => vertices.push(Vertex::new(*id, parse_level(n, level)?)),
            ["e", a, b] => edges.push(Edge::new(*a, *b)),
            _ => return Err(err(n, format!("unrecognized line {:?}", toks.join(" ")))),
        }
    }
    Ok(LevelGraph::new(vertices, edges))
}

pub fn write_lgf(graph: &LevelGraph) -> String {
    let g = graph.canonical();
    let mut out = String::from("LGF 1\n");
    for v in g.vertices() {
        let _ = writeln!(out, "v {} {}", v.id, v.level);
    }
    for e in g.edges() {
        let _ = writeln!(out, "e {} {}", e.lower, e.upper);
    }
    out
}

pub fn parse_ldf(text: &str) -> Result<Drawing, FormatError> {
    let mut orders = BTreeMap::new();
    for (n, toks) in content_lines(text, "LDF 1")? {
        match toks.as_slice() {
            ["l", level, ids @ ..] => {
                let level = parse_level(n, level)?;
                if orders
                    .insert(level, ids.iter().map(|s| s.to_string()).collect())
                    .is_some()
                {
                    return Err(err(n, format!("level {level} listed twice")));
                }
            }
            _ => return Err(err(n, format!("unrecognized line {:?}", toks.join(" ")))),
        }
    }
    Ok(Drawing::new(orders))
}

pub fn write_ldf(drawing: &Drawing) -> String {
    let mut out = String::from("LDF 1\n");
    for (level, ids) in drawing.orders() {
        let _ = write!(out, "l {level}");
        for id in ids {
            let _ = write!(out, " {id}");
        }
        out.push('\n');
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algo {
    Randerath,
    HealyKuusik,
    HarriganHealy,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Randerath => "randerath",
            Algo::HealyKuusik => "healy-kuusik",
            Algo::HarriganHealy => "harrigan-healy",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "randerath" => Ok(Algo::Randerath),
            "healy-kuusik" => Ok(Algo::HealyKuusik),
            "harrigan-healy" => Ok(Algo::HarriganHealy),
            _ => Err(format!("unknown algorithm {s:?}")),
        }
    }
}

/// Contents of an RPF file: everything needed to replay one embedder run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replay {
    pub algo: Algo,
    /// Class picks in order (randerath, healy-kuusik).
    pub classes: Vec<(PairLiteral, bool)>,
    /// DFS entries (harrigan-healy).
    pub entries: Vec<PairLiteral>,
    /// Second-pass order (harrigan-healy).
    pub process: Vec<PairLiteral>,
    /// Reference drawing for the ve-graph embedders; absent means every
    /// level ordered by id.
    pub reference: Option<Drawing>,
}

impl Replay {
    pub fn new(algo: Algo) -> Self {
        Replay {
            algo,
            classes: Vec::new(),
            entries: Vec::new(),
            process: Vec::new(),
            reference: None,
        }
    }

    pub fn policy(&self) -> GreedyPolicy {
        GreedyPolicy::Replay(self.classes.clone())
    }

    pub fn choices(&self) -> HHChoices {
        HHChoices {
            entries: self.entries.clone(),
            process: self.process.clone(),
        }
    }
}

fn parse_literal(line: usize, s: &str) -> Result<PairLiteral, FormatError> {
    PairLiteral::parse(s).ok_or_else(|| err(line, format!("bad pair literal {s:?}")))
}

pub fn parse_rpf(text: &str) -> Result<Replay, FormatError> {
    let mut algo = None;
    let mut classes = Vec::new();
    let mut entries = Vec::new();
    let mut process = Vec::new();
    let mut reference: Option<BTreeMap<u32, Vec<String>>> = None;
    for (n, toks) in content_lines(text, "RPF 1")? {
        match toks.as_slice() {
            ["algo", name] => {
                if algo.is_some() {
                    return Err(err(n, "algo given twice"));
                }
                algo = Some(name.parse::<Algo>().map_err(|m| err(n, m))?);
            }
            ["class", lit, value] => {
                let value = match *value {
                    "true" => true,
                    "false" => false,
                    v => return Err(err(n, format!("expected true or false, found {v:?}"))),
                };
                classes.push((parse_literal(n, lit)?, value));
            }
            ["entry", lit] => entries.push(parse_literal(n, lit)?),
            ["process", lit] => process.push(parse_literal(n, lit)?),
            ["ref", level, ids @ ..] => {
                let level = parse_level(n, level)?;
                let ids = ids.iter().map(|s| s.to_string()).collect();
                if reference
                    .get_or_insert_with(BTreeMap::new)
                    .insert(level, ids)
                    .is_some()
                {
                    return Err(err(n, format!("reference level {level} listed twice")));
                }
            }
            _ => return Err(err(n, format!("unrecognized line {:?}", toks.join(" ")))),
        }
    }
    let algo = algo.ok_or_else(|| err(0, "missing algo line"))?;
    let misplaced = match algo {
        Algo::Randerath | Algo::HealyKuusik => !entries.is_empty() || !process.is_empty(),
        Algo::HarriganHealy => !classes.is_empty(),
    };
    if misplaced {
        return Err(err(0, format!("line kinds not valid for algo {algo}")));
    }
    Ok(Replay {
        algo,
        classes,
        entries,
        process,
        reference: reference.map(Drawing::new),
    })
}

pub fn write_rpf(replay: &Replay) -> String {
    let mut out = String::from("RPF 1\n");
    let _ = writeln!(out, "algo {}", replay.algo);
    if let Some(reference) = &replay.reference {
        for (level, ids) in reference.orders() {
            let _ = write!(out, "ref {level}");
            for id in ids {
                let _ = write!(out, " {id}");
            }
            out.push('\n');
        }
    }
    for (lit, value) in &replay.classes {
        let _ = writeln!(out, "class {lit} {value}");
    }
    for lit in &replay.entries {
        let _ = writeln!(out, "entry {lit}");
    }
    for lit in &replay.process {
        let _ = writeln!(out, "process {lit}");
    }
    out
}
