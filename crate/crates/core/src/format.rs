//! DIMACS-style graph files.
//!
//! ```text
//! c comment
//! p sp <n> <m>          p spt <n> <m>
//! a <u> <v> <w>         a <u> <v> <w> <t>
//! ```
//!
//! Vertex ids are 1-based on disk. Numbers are written with Rust's shortest
//! round-trip formatting, so parse and serialize are exact inverses.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::parametric::TimedDigraph;

#[derive(Clone, Debug, PartialEq)]
pub enum GraphFile {
    Plain(Digraph),
    Timed(TimedDigraph),
}

impl GraphFile {
    pub fn graph(&self) -> &Digraph {
        match self {
            GraphFile::Plain(g) => g,
            GraphFile::Timed(tg) => &tg.base,
        }
    }

    /// Timed view; plain graphs get unit times.
    pub fn timed(&self) -> TimedDigraph {
        match self {
            GraphFile::Plain(g) => TimedDigraph::unit(g.clone()),
            GraphFile::Timed(tg) => tg.clone(),
        }
    }
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| err(line, format!("bad {what} '{tok}'")))
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut header: Option<(bool, usize, usize, usize)> = None;
    let mut edges = Vec::new();
    let mut times = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let mut toks = raw.split_whitespace();
        let Some(tag) = toks.next() else { continue };
        match tag {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(err(line, "second problem line"));
                }
                let timed = match toks.next() {
                    Some("sp") => false,
                    Some("spt") => true,
                    other => return Err(err(line, format!("unknown problem kind {other:?}"))),
                };
                let n = number(toks.next(), line, "vertex count")?;
                let m = number(toks.next(), line, "edge count")?;
                header = Some((timed, n, m, line));
            }
            "a" => {
                let Some((timed, n, _, _)) = header else {
                    return Err(err(line, "edge before problem line"));
                };
                let u: usize = number(toks.next(), line, "tail")?;
                let v: usize = number(toks.next(), line, "head")?;
                let w: f64 = number(toks.next(), line, "weight")?;
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(err(line, format!("vertex {x} out of range 1..={n}")));
                    }
                }
                if !w.is_finite() {
                    return Err(err(line, "weight must be finite"));
                }
                if timed {
                    let t: f64 = number(toks.next(), line, "time")?;
                    if !(t.is_finite() && t > 0.0) {
                        return Err(err(line, format!("time {t} must be positive")));
                    }
                    times.push(t);
                }
                edges.push((u - 1, v - 1, w));
            }
            other => return Err(err(line, format!("unknown record '{other}'"))),
        }
        if toks.next().is_some() {
            return Err(err(line, "trailing fields"));
        }
    }
    let Some((timed, n, m, header_line)) = header else {
        return Err(err(last_line.max(1), "missing problem line"));
    };
    if edges.len() != m {
        return Err(err(
            header_line,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    let g = Digraph::new(n, &edges)?;
    Ok(if timed {
        GraphFile::Timed(TimedDigraph::new(g, times)?)
    } else {
        GraphFile::Plain(g)
    })
}

pub fn serialize_graph(file: &GraphFile) -> String {
    let g = file.graph();
    let mut out = String::new();
    match file {
        GraphFile::Plain(_) => {
            writeln!(out, "p sp {} {}", g.n(), g.m()).unwrap();
            for e in g.edges() {
                writeln!(out, "a {} {} {}", e.from + 1, e.to + 1, e.weight).unwrap();
            }
        }
        GraphFile::Timed(tg) => {
            writeln!(out, "p spt {} {}", g.n(), g.m()).unwrap();
            for (e, t) in g.edges().iter().zip(&tg.times) {
                writeln!(out, "a {} {} {} {}", e.from + 1, e.to + 1, e.weight, t).unwrap();
            }
        }
    }
    out
}
