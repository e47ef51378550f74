//! Text formats.
//!
//! Line sets:
//! ```text
//! qgraph v=6 q=2
//! 100000,011000
//! ```
//! Spreads:
//! ```text
//! spread v=4 n=2 q=2
//! 1000,0100
//! ```
//! Matrices: rows as digit strings, blocks separated by blank lines.
//! Everything after `#` on a line is ignored in all three formats.

use std::collections::HashMap;

use crate::designs::Spread;
use crate::error::{Error, Result};
use crate::graph::QaryGraph;
use crate::groups::GMatrix;
use crate::space::{Ambient, Subspace};

fn strip(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Content lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, strip(l))).filter(|(_, l)| !l.is_empty())
}

fn parse_header(line: usize, text: &str, tag: &str, keys: &[&str]) -> Result<HashMap<String, usize>> {
    let mut parts = text.split_whitespace();
    if parts.next() != Some(tag) {
        return Err(Error::parse(line, format!("expected header starting with `{tag}`")));
    }
    let mut out = HashMap::new();
    for p in parts {
        let (k, v) = p.split_once('=').ok_or_else(|| Error::parse(line, format!("malformed field `{p}`")))?;
        let v: usize = v.parse().map_err(|_| Error::parse(line, format!("non-numeric value in `{p}`")))?;
        out.insert(k.to_string(), v);
    }
    for k in keys {
        if !out.contains_key(*k) {
            return Err(Error::parse(line, format!("header is missing `{k}=`")));
        }
    }
    Ok(out)
}

fn parse_vectors(amb: Ambient, line: usize, text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            if t.len() != amb.v() {
                return Err(Error::parse(line, format!("vector `{t}` does not have {} coordinates", amb.v())));
            }
            amb.parse(t).map_err(|e| Error::parse(line, e.to_string()))
        })
        .collect()
}

/// Parses a line-set file; duplicate edges are merged.
pub fn parse_lineset(text: &str) -> Result<QaryGraph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let h = parse_header(hl, header, "qgraph", &["v", "q"])?;
    let amb = Ambient::new(h["v"], h["q"] as u32).map_err(|e| Error::parse(hl, e.to_string()))?;
    let mut edges = Vec::new();
    for (ln, text) in lines {
        let vecs = parse_vectors(amb, ln, text)?;
        if vecs.len() != 2 {
            return Err(Error::parse(ln, format!("an edge needs 2 vectors, got {}", vecs.len())));
        }
        let e = Subspace::span_words(amb, vecs);
        if e.dim() != 2 {
            return Err(Error::parse(ln, "edge vectors are linearly dependent"));
        }
        edges.push(e);
    }
    QaryGraph::new(amb, edges)
}

/// Writes edges in canonical order, one canonical basis per line.
pub fn write_lineset(g: &QaryGraph) -> String {
    let amb = g.ambient();
    let mut out = format!("qgraph v={} q={}\n", amb.v(), amb.q());
    for e in g.edges() {
        let b = e.basis();
        out.push_str(&format!("{},{}\n", amb.format(b[0]), amb.format(b[1])));
    }
    out
}

/// Parses and validates a spread file.
pub fn parse_spread(text: &str) -> Result<Spread> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let h = parse_header(hl, header, "spread", &["v", "n", "q"])?;
    let amb = Ambient::new(h["v"], h["q"] as u32).map_err(|e| Error::parse(hl, e.to_string()))?;
    let n = h["n"];
    let mut elements = Vec::new();
    for (ln, text) in lines {
        let vecs = parse_vectors(amb, ln, text)?;
        let e = Subspace::span_words(amb, vecs);
        if e.dim() != n {
            return Err(Error::parse(ln, format!("element has dimension {}, expected {n}", e.dim())));
        }
        elements.push(e);
    }
    Spread::validated(amb, n, elements)
}

pub fn write_spread(s: &Spread) -> String {
    let amb = s.ambient();
    let mut out = format!("spread v={} n={} q={}\n", amb.v(), s.n(), amb.q());
    for e in s.elements() {
        let rows: Vec<String> = e.basis().iter().map(|&r| amb.format(r)).collect();
        out.push_str(&rows.join(","));
        out.push('\n');
    }
    out
}

/// Parses matrix blocks over F_q; block size is the row length.
pub fn parse_matrices(text: &str, q: u32) -> Result<Vec<GMatrix>> {
    let mut blocks: Vec<Vec<(usize, String)>> = vec![Vec::new()];
    for (i, raw) in text.lines().enumerate() {
        let t = strip(raw);
        if t.is_empty() {
            if raw.trim().is_empty() && !blocks.last().unwrap().is_empty() {
                blocks.push(Vec::new());
            }
            continue;
        }
        blocks.last_mut().unwrap().push((i + 1, t.replace([' ', ','], "")));
    }
    blocks
        .into_iter()
        .filter(|b| !b.is_empty())
        .map(|b| {
            let line = b[0].0;
            let v = b[0].1.len();
            if b.len() != v {
                return Err(Error::parse(line, format!("matrix block has {} rows of length {v}", b.len())));
            }
            let amb = Ambient::new(v, q).map_err(|e| Error::parse(line, e.to_string()))?;
            let rows: Vec<&str> = b.iter().map(|(_, r)| r.as_str()).collect();
            GMatrix::from_rows(amb, &rows).map_err(|e| Error::parse(line, e.to_string()))
        })
        .collect()
}

pub fn write_matrix(m: &GMatrix) -> String {
    m.row_strings().join("\n") + "\n"
}
