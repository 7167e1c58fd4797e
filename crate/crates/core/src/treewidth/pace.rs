//! PACE-style tree-decomposition exchange files.
//!
//! Header `s td <#bags> <width+1> <#vertices>`, bag lines
//! `b <id> <v...>` with 1-based bag ids and vertex ids, then one tree edge
//! `<id1> <id2>` per line; `c`-lines are comments.

use super::decomposition::TreeDecomposition;
use crate::error::{ParseError, ParseErrorKind};
use std::fmt::Write as _;

pub fn write_pace_td(td: &TreeDecomposition, num_vertices: usize) -> String {
    let mut out = String::new();
    let width_plus_one = td.bags.iter().map(Vec::len).max().unwrap_or(0);
    let _ = writeln!(out, "s td {} {} {}", td.bags.len(), width_plus_one, num_vertices);
    for (i, bag) in td.bags.iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for &v in bag {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    for &(a, b) in &td.edges {
        let _ = writeln!(out, "{} {}", a + 1, b + 1);
    }
    out
}

/// Parse a PACE file. Vertex ids in the file are 1-based and are mapped to
/// the crate's 0-based incidence-graph ids.
pub fn parse_pace_td(text: &str) -> Result<(TreeDecomposition, usize), ParseError> {
    let mut header: Option<(usize, usize)> = None; // (#bags, #vertices)
    let mut bags: Vec<Vec<u32>> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "s" => {
                if header.is_some() || tokens.len() != 5 || tokens[1] != "td" {
                    return Err(ParseError::new(
                        lineno,
                        ParseErrorKind::MalformedHeader("expected `s td <bags> <width+1> <vertices>`".into()),
                    ));
                }
                let nb: usize = tokens[2].parse().map_err(|_| {
                    ParseError::new(lineno, ParseErrorKind::MalformedHeader("bad bag count".into()))
                })?;
                let nv: usize = tokens[4].parse().map_err(|_| {
                    ParseError::new(lineno, ParseErrorKind::MalformedHeader("bad vertex count".into()))
                })?;
                bags = vec![Vec::new(); nb];
                header = Some((nb, nv));
            }
            "b" => {
                let Some((nb, nv)) = header else {
                    return Err(ParseError::new(
                        lineno,
                        ParseErrorKind::MalformedHeader("bag line before header".into()),
                    ));
                };
                if tokens.len() < 2 {
                    return Err(ParseError::new(
                        lineno,
                        ParseErrorKind::MalformedLine("bag line needs an id".into()),
                    ));
                }
                let id: usize = tokens[1].parse().map_err(|_| {
                    ParseError::new(lineno, ParseErrorKind::MalformedLine("bad bag id".into()))
                })?;
                if id < 1 || id > nb {
                    return Err(ParseError::new(
                        lineno,
                        ParseErrorKind::MalformedLine(format!("bag id {id} out of range")),
                    ));
                }
                let mut bag = Vec::with_capacity(tokens.len() - 2);
                for t in &tokens[2..] {
                    let v: u64 = t.parse().map_err(|_| {
                        ParseError::new(lineno, ParseErrorKind::MalformedLine(format!("bad vertex `{t}`")))
                    })?;
                    if v < 1 || v > nv as u64 {
                        return Err(ParseError::new(
                            lineno,
                            ParseErrorKind::CoordinateOutOfRange { coord: v, dim: nv as u32 },
                        ));
                    }
                    bag.push(v as u32 - 1);
                }
                bag.sort_unstable();
                bag.dedup();
                bags[id - 1] = bag;
            }
            _ => {
                let Some((nb, _)) = header else {
                    return Err(ParseError::new(
                        lineno,
                        ParseErrorKind::MalformedHeader("edge line before header".into()),
                    ));
                };
                if tokens.len() != 2 {
                    return Err(ParseError::new(
                        lineno,
                        ParseErrorKind::MalformedLine("expected `<id1> <id2>`".into()),
                    ));
                }
                let a: usize = tokens[0].parse().map_err(|_| {
                    ParseError::new(lineno, ParseErrorKind::MalformedLine("bad edge endpoint".into()))
                })?;
                let b: usize = tokens[1].parse().map_err(|_| {
                    ParseError::new(lineno, ParseErrorKind::MalformedLine("bad edge endpoint".into()))
                })?;
                if a < 1 || a > nb || b < 1 || b > nb {
                    return Err(ParseError::new(
                        lineno,
                        ParseErrorKind::MalformedLine("edge endpoint out of range".into()),
                    ));
                }
                edges.push((a - 1, b - 1));
            }
        }
    }
    let Some((_, nv)) = header else {
        return Err(ParseError::new(
            text.lines().count().max(1),
            ParseErrorKind::MalformedHeader("missing `s td` header".into()),
        ));
    };
    Ok((TreeDecomposition { bags, edges }, nv))
}
