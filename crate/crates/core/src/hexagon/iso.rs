//! Collineations between line sets of PG(v-1, 2).
//!
//! A basis b_0..b_{v-1} of the source is chosen so that each b_i lies on a
//! source line through a point already in ⟨b_0..b_{i-1}⟩; its image then
//! lies on one of the target lines through the image of that point.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::QaryGraph;
use crate::groups::GMatrix;
use crate::pg2::Pg2;

struct Plan {
    basis: Vec<u64>,
    /// Point of the earlier span collinear with `basis[i]`, if any.
    anchor: Vec<Option<u64>>,
    /// Words of ⟨b_0..b_{k-1}⟩ as a bitmask, k = 0..=v.
    spans: Vec<u64>,
}

fn plan(t: &Pg2, lines: &[[u32; 3]]) -> Plan {
    let v = t.ambient.v();
    let mut basis = Vec::new();
    let mut anchor = Vec::new();
    let mut span = vec![false; 1 << v];
    span[0] = true;
    let mask = |span: &[bool]| span.iter().enumerate().filter(|(_, &s)| s).fold(0u64, |m, (w, _)| m | 1 << w);
    let mut spans = vec![mask(&span)];
    while basis.len() < v {
        let found = lines.iter().find_map(|l| {
            let inside: Vec<u64> = l.iter().map(|&p| p as u64).filter(|&p| span[p as usize]).collect();
            let outside = l.iter().map(|&p| p as u64).find(|&p| !span[p as usize]);
            match (inside.first(), outside) {
                (Some(&x), Some(y)) => Some((Some(x), y)),
                _ => None,
            }
        });
        let (a, y) = found.unwrap_or_else(|| (None, (1..1u64 << v).find(|&p| !span[p as usize]).unwrap()));
        let old = span.clone();
        for w in 0..1usize << v {
            if old[w] {
                span[w ^ y as usize] = true;
            }
        }
        basis.push(y);
        anchor.push(a);
        spans.push(mask(&span));
    }
    Plan { basis, anchor, spans }
}

fn line_words(t: &Pg2, g: &QaryGraph) -> Vec<[u32; 3]> {
    g.edges().iter().map(|e| t.lines[t.line_id(e)]).collect()
}

/// Searches GL(v, 2) for matrices mapping the lines of `a` onto those of `b`;
/// stops after `limit` hits and returns them with the total count found.
pub fn collineations(a: &QaryGraph, b: &QaryGraph, limit: usize) -> Result<(u64, Vec<GMatrix>)> {
    let amb = a.ambient();
    if amb != b.ambient() || amb.q() != 2 {
        return Err(Error::InvalidParameters("collineation search needs two line sets over the same F_2^v".into()));
    }
    if a.edge_count() != b.edge_count() || a.edges().iter().any(|e| e.dim() != 2) || b.edges().iter().any(|e| e.dim() != 2) {
        return Ok((0, Vec::new()));
    }
    let v = amb.v();
    if v > 6 {
        return Err(Error::InvalidParameters("collineation search supports v ≤ 6".into()));
    }
    let t = Pg2::new(v)?;
    let la = line_words(&t, a);
    let mut in_b = vec![false; t.line_count()];
    for e in b.edges() {
        in_b[t.line_id(e)] = true;
    }
    let plan = plan(&t, &la);
    // the first basis image ranges over all points; split across workers
    let per_root: Vec<(u64, Vec<GMatrix>)> = (1..1u64 << v)
        .into_par_iter()
        .map(|y0| {
            let mut st = Search { v, t: &t, la: &la, in_b: &in_b, plan: &plan, img: vec![0; 1 << v], count: 0, found: Vec::new(), limit };
            st.img[plan.basis[0] as usize] = y0;
            if st.lines_ok(1) {
                st.rec(1, 1 | 1 << y0);
            }
            (st.count, st.found)
        })
        .collect();
    let count = per_root.iter().map(|r| r.0).sum();
    let mut found: Vec<GMatrix> = per_root.into_iter().flat_map(|r| r.1).collect();
    found.sort();
    found.truncate(limit);
    Ok((count, found))
}

struct Search<'a> {
    v: usize,
    t: &'a Pg2,
    la: &'a [[u32; 3]],
    in_b: &'a [bool],
    plan: &'a Plan,
    /// Images of the span built so far, indexed by word.
    img: Vec<u64>,
    count: u64,
    found: Vec<GMatrix>,
    limit: usize,
}

impl Search<'_> {
    /// Lines of `a` inside the span of the first `k` basis vectors map to lines of `b`.
    fn lines_ok(&self, k: usize) -> bool {
        let span = self.plan.spans[k];
        self.la.iter().filter(|l| l.iter().all(|&p| span >> p & 1 == 1)).all(|l| {
            let (x, y) = (self.img[l[0] as usize], self.img[l[1] as usize]);
            self.in_b[self.t.line_through(x, y)]
        })
    }

    fn rec(&mut self, k: usize, image_span: u64) {
        if k == self.v {
            self.count += 1;
            if self.found.len() < self.limit {
                let rows: Vec<u64> = (0..self.v).map(|i| self.img[1 << (self.v - 1 - i)]).collect();
                let amb = self.t.ambient;
                // rows of the matrix are the images of the unit vectors
                self.found.push(GMatrix::new(amb, rows).expect("basis images are independent"));
            }
            return;
        }
        let bk = self.plan.basis[k];
        let choices: Vec<u64> = match self.plan.anchor[k] {
            Some(x) => {
                let ix = self.img[x as usize];
                self.t
                    .lines
                    .iter()
                    .enumerate()
                    .filter(|(id, l)| self.in_b[*id] && l.contains(&(ix as u32)))
                    .flat_map(|(_, l)| l.iter().map(|&p| p as u64).filter(move |&p| p != ix))
                    .collect()
            }
            None => (1..1u64 << self.v).collect(),
        };
        let size = 1usize << self.v;
        for y in choices {
            if image_span >> y & 1 == 1 {
                continue;
            }
            let saved = self.img.clone();
            let mut new_span = image_span;
            let span = self.plan.spans[k];
            for w in 0..size {
                if span >> w & 1 == 1 {
                    let w2 = w ^ bk as usize;
                    self.img[w2] = self.img[w] ^ y;
                    new_span |= 1 << self.img[w2];
                }
            }
            if self.lines_ok(k + 1) {
                self.rec(k + 1, new_span);
            }
            self.img = saved;
        }
    }
}

/// Number of collineations of a line set onto itself, with up to `keep` of them.
pub fn automorphisms(g: &QaryGraph, keep: usize) -> Result<(u64, Vec<GMatrix>)> {
    collineations(g, g, keep)
}

/// A matrix mapping the lines of `a` onto those of `b`, if one exists.
pub fn find_collineation(a: &QaryGraph, b: &QaryGraph) -> Result<Option<GMatrix>> {
    Ok(collineations(a, b, 1)?.1.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{act, singer_generators};

    #[test]
    fn fano_plane_has_gl3() {
        let g = QaryGraph::complete(3, 2).unwrap();
        assert_eq!(automorphisms(&g, 0).unwrap().0, 168);
    }

    #[test]
    fn conjugate_is_found() {
        let g = crate::hexagon::build_split_cayley_hexagon().unwrap();
        let (s, p) = singer_generators();
        let m = s.mul(&p);
        let h = QaryGraph::new(g.ambient(), g.edges().iter().map(|e| act(&m, e).unwrap()).collect::<Vec<_>>()).unwrap();
        let c = find_collineation(&g, &h).unwrap().unwrap();
        let img: Vec<_> = g.edges().iter().map(|e| act(&c, e).unwrap()).collect();
        assert_eq!(QaryGraph::new(g.ambient(), img).unwrap(), h);
    }

    #[test]
    fn hexagon_group_is_g2_2() {
        let g = crate::hexagon::build_split_cayley_hexagon().unwrap();
        assert_eq!(automorphisms(&g, 0).unwrap().0, 12096);
    }
}
