use rayon::prelude::*;

use super::classify::classify_deza;
use super::spread::{field_reduction_spread, validate_spread, Spread};
use crate::enumerate::SubspaceEnumeration;
use crate::error::{Error, Result};
use crate::graph::QaryGraph;
use crate::space::{Ambient, Subspace};

/// Standard alternating form Σ x_{2i} y_{2i+1} - x_{2i+1} y_{2i}.
pub fn standard_symplectic_form(amb: Ambient, x: u64, y: u64) -> u8 {
    let f = amb.field();
    (0..amb.v() / 2).fold(0, |acc, i| {
        let t = f.mul(amb.coord(x, 2 * i), amb.coord(y, 2 * i + 1));
        let u = f.mul(amb.coord(x, 2 * i + 1), amb.coord(y, 2 * i));
        f.add(acc, f.sub(t, u))
    })
}

/// Totally isotropic 2-subspaces of the standard alternating form.
pub fn symplectic_srg(v: usize, q: u32) -> Result<QaryGraph> {
    if v % 2 != 0 {
        return Err(Error::InvalidParameters(format!("symplectic graph needs even v, got {v}")));
    }
    let amb = Ambient::new(v, q)?;
    let lines = SubspaceEnumeration::new(amb, 2)?;
    let edges: Vec<Subspace> = lines
        .iter()
        .filter(|l| standard_symplectic_form(amb, l.basis()[0], l.basis()[1]) == 0)
        .cloned()
        .collect();
    QaryGraph::new(amb, edges)
}

/// All 2-subspaces lying inside some spread element.
pub fn spread_union_complete(s: &Spread) -> Result<QaryGraph> {
    if !validate_spread(s) {
        return Err(Error::InvalidSpread("spread does not partition the ambient space".into()));
    }
    let amb = s.ambient();
    let edges: Vec<Subspace> = s
        .elements()
        .par_iter()
        .flat_map_iter(|e| {
            let pts = e.point_words();
            let mut out = Vec::new();
            for (i, &a) in pts.iter().enumerate() {
                for &b in &pts[i + 1..] {
                    out.push(Subspace::span_words(amb, [a, b]));
                }
            }
            out
        })
        .collect();
    QaryGraph::new(amb, edges)
}

/// Embeds a copy of a (v,k,1,0;2) graph in every element of the field-reduction
/// v-spread of F_2^{vt}, via the element's canonical basis.
pub fn extend_by_spread(g: &QaryGraph, t: usize) -> Result<QaryGraph> {
    if t < 2 {
        return Err(Error::InvalidParameters(format!("t must be at least 2, got {t}")));
    }
    let amb = g.ambient();
    let rep = classify_deza(g)?;
    if amb.q() != 2 || rep.params.b != 1 || rep.params.a != 0 {
        return Err(Error::InvalidParameters(format!("expected (v,k,1,0;2), got {:?}", rep.params)));
    }
    let v = amb.v();
    let spread = field_reduction_spread(v * t, v, 2)?;
    let big = spread.ambient();
    let edges: Vec<Subspace> = spread
        .elements()
        .iter()
        .flat_map(|el| {
            let basis = el.basis().to_vec();
            let embed = move |x: u64| -> u64 {
                (0..v).filter(|&i| amb.coord(x, i) == 1).fold(0, |acc, i| acc ^ basis[i])
            };
            g.edges().iter().map(move |e| Subspace::span_words(big, e.basis().iter().map(|&w| embed(w))))
        })
        .collect();
    QaryGraph::new(big, edges)
}
