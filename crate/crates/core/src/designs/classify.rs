use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::params::{deza_counts, DdgParams, DezaCounts, DezaParams};
use super::spread::{validate_spread, Spread};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::{ClassicalGraph, GraphIndex, QaryGraph};
use crate::space::Subspace;

fn regular_k(g: &QaryGraph) -> Result<u32> {
    let r = g.regularity();
    match (r.is_regular, r.k) {
        (true, Some(k)) => Ok(k as u32),
        _ => Err(Error::NotRegular { witness: format!("{:?}", r.witness) }),
    }
}

/// Per-vertex tally: value -> (number of partners, first partner).
type Tally = BTreeMap<u64, (u64, usize)>;

fn per_vertex_tallies(idx: &GraphIndex) -> Vec<Tally> {
    (0..idx.len())
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::new();
            for j in (0..idx.len()).filter(|&j| j != i) {
                let e = t.entry(idx.common(i, j) as u64).or_insert((0, j));
                e.0 += 1;
            }
            t
        })
        .collect()
}

/// Outcome of a successful q-Deza recognition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DezaReport {
    pub params: DezaParams,
    /// Closed-form counts, when b ≠ a and the formula is integral.
    pub formula: Option<DezaCounts>,
    pub formula_error: Option<String>,
    /// Observed number of b-partners per vertex, indexed by point id.
    pub observed_n1: Vec<u64>,
    /// Every vertex agrees with the closed form (trivially true when b = a).
    pub consistent: bool,
}

impl DezaReport {
    /// Observed counts if they are the same for every vertex.
    pub fn observed_counts(&self, point_count: usize) -> Option<DezaCounts> {
        let first = *self.observed_n1.first()?;
        self.observed_n1
            .iter()
            .all(|&c| c == first)
            .then(|| DezaCounts { n1: first, n2: point_count as u64 - 1 - first })
    }
}

/// Recognises a q-Deza graph: at most two common-neighbour values over all
/// vertex pairs. A third value is an error carrying witness pairs.
pub fn classify_deza(g: &QaryGraph) -> Result<DezaReport> {
    let k = regular_k(g)?;
    let idx = g.index();
    let tallies = per_vertex_tallies(idx);
    let mut values: BTreeMap<u64, (usize, usize)> = BTreeMap::new();
    for (i, t) in tallies.iter().enumerate() {
        for (&val, &(_, j)) in t {
            values.entry(val).or_insert((i, j));
        }
    }
    if values.len() > 2 {
        let pts = &idx.points;
        return Err(Error::TooManyValues {
            values: values.keys().copied().collect(),
            witnesses: values
                .values()
                .map(|&(i, j)| (format!("{:?}", pts.subspace(i)), format!("{:?}", pts.subspace(j))))
                .collect(),
        });
    }
    let amb = g.ambient();
    let a = *values.keys().next().unwrap_or(&0);
    let b = *values.keys().last().unwrap_or(&0);
    let params = DezaParams { v: amb.v() as u32, k, b, a, q: amb.q() };
    let observed_n1: Vec<u64> = tallies.iter().map(|t| t.get(&b).map_or(0, |e| e.0)).collect();
    let (formula, formula_error) = if a == b {
        (None, None)
    } else {
        match deza_counts(&params) {
            Ok(c) => (Some(c), None),
            Err(e) => (None, Some(e.to_string())),
        }
    };
    let consistent = a == b || formula.is_some_and(|c| observed_n1.iter().all(|&n| n == c.n1));
    Ok(DezaReport { params, formula, formula_error, observed_n1, consistent })
}

/// Recognises a q-DDG with respect to a spread. `Ok(None)` means the counts do
/// not respect the spread classes.
pub fn classify_ddg(g: &QaryGraph, s: &Spread) -> Result<Option<DdgParams>> {
    if g.ambient() != s.ambient() {
        return Err(Error::AmbientMismatch(format!("{:?}", g.ambient()), format!("{:?}", s.ambient())));
    }
    if !validate_spread(s) {
        return Err(Error::InvalidSpread("spread does not partition the ambient space".into()));
    }
    let k = regular_k(g)?;
    let idx = g.index();
    let map = s.element_map();
    let class: Vec<usize> = idx.points.vectors().iter().map(|w| map[w]).collect();
    let (inner, cross) = (0..idx.len())
        .into_par_iter()
        .map(|i| {
            let (mut inner, mut cross) = (BTreeSet::new(), BTreeSet::new());
            for j in i + 1..idx.len() {
                let c = idx.common(i, j) as u64;
                if class[i] == class[j] {
                    inner.insert(c);
                } else {
                    cross.insert(c);
                }
            }
            (inner, cross)
        })
        .reduce(
            || (BTreeSet::new(), BTreeSet::new()),
            |mut a, b| {
                a.0.extend(b.0);
                a.1.extend(b.1);
                a
            },
        );
    if inner.len() > 1 || cross.len() > 1 {
        return Ok(None);
    }
    let amb = g.ambient();
    Ok(Some(DdgParams {
        v: amb.v() as u32,
        k,
        lambda1: inner.first().copied().unwrap_or(0),
        lambda2: cross.first().copied(),
        n: s.n() as u32,
        q: amb.q(),
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SrgKind {
    SpreadUnionOfComplete,
    Symplectic,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SrgRecognition {
    pub kind: SrgKind,
    /// Common neighbours of adjacent pairs.
    pub lambda: Option<u64>,
    /// Common neighbours of non-adjacent pairs.
    pub mu: Option<u64>,
    pub spread: Option<Spread>,
    /// Alternating form matrix, row i = coefficients of B(e_i, ·).
    pub form: Option<Vec<Vec<u8>>>,
}

/// Recognises a q-SRG (counts depend only on adjacency) and extracts a
/// spread or symplectic witness. `Ok(None)` when not strongly regular.
pub fn classify_srg(g: &QaryGraph) -> Result<Option<SrgRecognition>> {
    let k = regular_k(g)? as usize;
    let idx = g.index();
    let (adj, non) = (0..idx.len())
        .into_par_iter()
        .map(|i| {
            let (mut adj, mut non) = (BTreeSet::new(), BTreeSet::new());
            for j in i + 1..idx.len() {
                let c = idx.common(i, j) as u64;
                if idx.adjacent(i, j) {
                    adj.insert(c);
                } else {
                    non.insert(c);
                }
            }
            (adj, non)
        })
        .reduce(
            || (BTreeSet::new(), BTreeSet::new()),
            |mut a, b| {
                a.0.extend(b.0);
                a.1.extend(b.1);
                a
            },
        );
    if adj.len() > 1 || non.len() > 1 {
        return Ok(None);
    }
    let closures: Vec<Subspace> =
        (0..idx.len()).map(|i| idx.neighborhood(i).closure.expect("regular graph")).collect();
    let mut rec = SrgRecognition {
        kind: SrgKind::Other,
        lambda: adj.first().copied(),
        mu: non.first().copied(),
        spread: None,
        form: None,
    };
    if let Some(s) = spread_witness(g, &closures, k) {
        rec.kind = SrgKind::SpreadUnionOfComplete;
        rec.spread = Some(s);
    } else if k + 2 == g.ambient().v() {
        if let Some(form) = symplectic_witness(g, &closures) {
            rec.kind = SrgKind::Symplectic;
            rec.form = Some(form);
        }
    }
    Ok(Some(rec))
}

/// Neighbourhood closures constant on components and forming a spread.
fn spread_witness(g: &QaryGraph, closures: &[Subspace], k: usize) -> Option<Spread> {
    let idx = g.index();
    for i in 0..idx.len() {
        if idx.adj[i].ones().any(|j| closures[j] != closures[i]) {
            return None;
        }
    }
    let mut els: Vec<Subspace> = closures.to_vec();
    els.sort();
    els.dedup();
    Spread::validated(g.ambient(), k + 1, els).ok()
}

fn alt_pairs(v: usize) -> Vec<(usize, usize)> {
    (0..v).flat_map(|i| (i + 1..v).map(move |j| (i, j))).collect()
}

/// Solves for an alternating form B with N(x) = x^⊥ for every vertex x.
fn symplectic_witness(g: &QaryGraph, closures: &[Subspace]) -> Option<Vec<Vec<u8>>> {
    let amb = g.ambient();
    let f = amb.field();
    let v = amb.v();
    let pairs = alt_pairs(v);
    let idx = g.index();
    let mut rows = Vec::new();
    for (i, cl) in closures.iter().enumerate() {
        let x = idx.points.vector(i);
        for &y in cl.basis() {
            rows.push(
                pairs
                    .iter()
                    .map(|&(a, b)| {
                        let t = f.mul(amb.coord(x, a), amb.coord(y, b));
                        f.sub(t, f.mul(amb.coord(x, b), amb.coord(y, a)))
                    })
                    .collect::<Vec<u8>>(),
            );
        }
    }
    let null = nullspace(f, rows, pairs.len());
    if null.len() != 1 {
        return None;
    }
    let mut m = vec![vec![0u8; v]; v];
    for (&(a, b), &c) in pairs.iter().zip(&null[0]) {
        m[a][b] = c;
        m[b][a] = f.neg(c);
    }
    let form = |x: u64, y: u64| -> u8 {
        let mut acc = 0;
        for a in 0..v {
            for b in 0..v {
                acc = f.add(acc, f.mul(amb.coord(x, a), f.mul(m[a][b], amb.coord(y, b))));
            }
        }
        acc
    };
    for (i, cl) in closures.iter().enumerate() {
        let x = idx.points.vector(i);
        if cl.dim() + 1 != v || cl.basis().iter().any(|&y| form(x, y) != 0) {
            return None;
        }
        // nondegenerate: B(x, ·) is nonzero
        if (0..v).all(|b| form(x, amb.unit(b)) == 0) {
            return None;
        }
    }
    Some(m)
}

/// Basis of {c : rows · c = 0}.
pub(crate) fn nullspace(f: &Field, mut rows: Vec<Vec<u8>>, ncols: usize) -> Vec<Vec<u8>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let t = rows[i][c];
                for j in 0..ncols {
                    rows[i][j] = f.sub(rows[i][j], f.mul(t, rows[r][j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![0u8; ncols];
        x[free] = 1;
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = f.neg(rows[i][free]);
        }
        out.push(x);
    }
    out
}

/// Degrees and per-vertex common-neighbour histograms of a classical graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalProfile {
    pub degrees: BTreeSet<usize>,
    pub values: BTreeSet<usize>,
    /// value -> number of partners, per vertex.
    pub per_vertex: Vec<BTreeMap<usize, usize>>,
}

pub fn classical_profile(c: &ClassicalGraph) -> ClassicalProfile {
    let n = c.vertex_count();
    let per_vertex: Vec<BTreeMap<usize, usize>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut t = BTreeMap::new();
            for j in (0..n).filter(|&j| j != i) {
                *t.entry(c.common_neighbors(i, j)).or_insert(0) += 1;
            }
            t
        })
        .collect();
    let values = per_vertex.iter().flat_map(|t| t.keys().copied()).collect();
    let degrees = (0..n).map(|i| c.degree(i)).collect();
    ClassicalProfile { degrees, values, per_vertex }
}

/// Common-neighbour values of a classical graph within and across classes.
pub fn classical_class_values(c: &ClassicalGraph, class: &[usize]) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let n = c.vertex_count();
    let mut inner = BTreeSet::new();
    let mut cross = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = c.common_neighbors(i, j);
            if class[i] == class[j] {
                inner.insert(v);
            } else {
                cross.insert(v);
            }
        }
    }
    (inner, cross)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{field_reduction_spread, spread_union_complete, symplectic_srg};

    #[test]
    fn deza_of_trivial_graphs() {
        let r = classify_deza(&QaryGraph::complete(3, 2).unwrap()).unwrap();
        assert_eq!(r.params, DezaParams::new(3, 2, 5, 5, 2));
        assert!(r.consistent);
        let r = classify_deza(&QaryGraph::empty(4, 2).unwrap()).unwrap();
        assert_eq!(r.params, DezaParams::new(4, 0, 0, 0, 2));
    }

    #[test]
    fn deza_of_symplectic() {
        let r = classify_deza(&symplectic_srg(4, 2).unwrap()).unwrap();
        assert_eq!((r.params.b, r.params.a), (3, 1));
        assert_eq!(r.formula, Some(DezaCounts { n1: 8, n2: 6 }));
        assert!(r.consistent);
    }

    #[test]
    fn ddg_examples() {
        let s = field_reduction_spread(4, 2, 2).unwrap();
        let g = spread_union_complete(&s).unwrap();
        let p = classify_ddg(&g, &s).unwrap().unwrap();
        assert_eq!(p, DdgParams { v: 4, k: 1, lambda1: 1, lambda2: Some(0), n: 2, q: 2 });
        let c = classify_ddg(&QaryGraph::complete(4, 2).unwrap(), &s).unwrap().unwrap();
        assert_eq!((c.k, c.lambda1, c.lambda2), (3, 13, Some(13)));
        let whole = field_reduction_spread(4, 4, 2).unwrap();
        assert_eq!(classify_ddg(&QaryGraph::complete(4, 2).unwrap(), &whole).unwrap().unwrap().lambda2, None);
    }

    #[test]
    fn srg_kinds() {
        let s = field_reduction_spread(6, 3, 2).unwrap();
        let r = classify_srg(&spread_union_complete(&s).unwrap()).unwrap().unwrap();
        assert_eq!(r.kind, SrgKind::SpreadUnionOfComplete);
        assert_eq!(r.spread.unwrap().elements(), s.elements());
        for (v, q) in [(4, 2), (6, 2), (4, 3)] {
            let r = classify_srg(&symplectic_srg(v, q).unwrap()).unwrap().unwrap();
            assert_eq!(r.kind, SrgKind::Symplectic, "v={v} q={q}");
        }
    }

    #[test]
    fn nonregular_is_reported() {
        let a = crate::space::Ambient::new(4, 2).unwrap();
        let e = Subspace::span_words(a, [a.unit(0), a.unit(1)]);
        let g = QaryGraph::new(a, [e]).unwrap();
        assert!(matches!(classify_deza(&g), Err(Error::NotRegular { .. })));
        assert!(matches!(classify_srg(&g), Err(Error::NotRegular { .. })));
    }
}
