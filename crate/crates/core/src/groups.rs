//! Matrix groups over F_q acting on row vectors from the right.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;

use crate::designs::nullspace;
use crate::enumerate::{SubspaceEnumeration, SubspaceId};
use crate::error::{Error, Result};
use crate::pg2::{image_table, Pg2};
use crate::space::{Ambient, Subspace};

/// Default cap on materialised group orders.
pub const DEFAULT_GROUP_BUDGET: u64 = 1_000_000;
/// Default cap on full GL(v, q) sweeps; admits GL(5,2) and refuses GL(6,2).
pub const DEFAULT_GL_BUDGET: u64 = 10_000_000;

/// An invertible v×v matrix; row i is the image of e_i.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GMatrix {
    ambient: Ambient,
    rows: Vec<u64>,
}

impl fmt::Debug for GMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|&r| self.ambient.format(r)).collect();
        write!(f, "[{}]", rows.join(" "))
    }
}

impl Serialize for GMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.row_strings().serialize(s)
    }
}

impl GMatrix {
    pub fn new(ambient: Ambient, rows: Vec<u64>) -> Result<GMatrix> {
        if rows.len() != ambient.v() || rows.iter().any(|&r| !ambient.is_valid(r)) {
            return Err(Error::InvalidParameters(format!("need {} valid rows", ambient.v())));
        }
        if Subspace::span_words(ambient, rows.iter().copied()).dim() != ambient.v() {
            return Err(Error::SingularMatrix);
        }
        Ok(GMatrix { ambient, rows })
    }

    /// Parses rows written as digit strings.
    pub fn from_rows(ambient: Ambient, rows: &[&str]) -> Result<GMatrix> {
        let words = rows.iter().map(|r| ambient.parse(r)).collect::<Result<Vec<_>>>()?;
        GMatrix::new(ambient, words)
    }

    pub fn identity(ambient: Ambient) -> GMatrix {
        GMatrix { ambient, rows: (0..ambient.v()).map(|i| ambient.unit(i)).collect() }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn row_strings(&self) -> Vec<String> {
        self.rows.iter().map(|&r| self.ambient.format(r)).collect()
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        self.ambient.coord(self.rows[i], j)
    }

    /// x·M.
    #[inline]
    pub fn apply(&self, x: u64) -> u64 {
        let amb = self.ambient;
        if amb.q() == 2 {
            let v = amb.v();
            let mut r = 0;
            let mut y = x;
            while y != 0 {
                let low = y.trailing_zeros() as usize;
                r ^= self.rows[v - 1 - low];
                y &= y - 1;
            }
            return r;
        }
        (0..amb.v()).fold(0, |acc, i| amb.axpy(acc, amb.coord(x, i), self.rows[i]))
    }

    /// self·other: first self, then other.
    pub fn mul(&self, other: &GMatrix) -> GMatrix {
        GMatrix { ambient: self.ambient, rows: self.rows.iter().map(|&r| other.apply(r)).collect() }
    }

    pub fn pow(&self, mut e: u64) -> GMatrix {
        let mut base = self.clone();
        let mut acc = GMatrix::identity(self.ambient);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> GMatrix {
        let amb = self.ambient;
        let f = amb.field();
        let v = amb.v();
        let mut a: Vec<Vec<u8>> = (0..v).map(|i| (0..v).map(|j| self.entry(i, j)).collect()).collect();
        let mut b: Vec<Vec<u8>> = (0..v).map(|i| (0..v).map(|j| u8::from(i == j)).collect()).collect();
        for c in 0..v {
            let p = (c..v).find(|&i| a[i][c] != 0).expect("invertible");
            a.swap(c, p);
            b.swap(c, p);
            let inv = f.inv(a[c][c]);
            for j in 0..v {
                a[c][j] = f.mul(a[c][j], inv);
                b[c][j] = f.mul(b[c][j], inv);
            }
            for i in (0..v).filter(|&i| i != c) {
                let t = a[i][c];
                if t != 0 {
                    for j in 0..v {
                        a[i][j] = f.sub(a[i][j], f.mul(t, a[c][j]));
                        b[i][j] = f.sub(b[i][j], f.mul(t, b[c][j]));
                    }
                }
            }
        }
        let rows = b.iter().map(|r| amb.pack(r).unwrap()).collect();
        GMatrix { ambient: amb, rows }
    }

    /// Multiplicative order, if at most `limit`.
    pub fn order(&self, limit: u64) -> Option<u64> {
        let id = GMatrix::identity(self.ambient);
        let mut x = self.clone();
        for n in 1..=limit {
            if x == id {
                return Some(n);
            }
            x = x.mul(self);
        }
        None
    }
}

/// Image of a subspace under right multiplication.
pub fn act(m: &GMatrix, s: &Subspace) -> Result<Subspace> {
    if m.ambient != s.ambient() {
        return Err(Error::AmbientMismatch(format!("{:?}", m.ambient), format!("{:?}", s.ambient())));
    }
    Ok(s.map_words(|x| m.apply(x)))
}

/// A group given by generators; elements are materialised on request.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    ambient: Ambient,
    generators: Vec<GMatrix>,
    elements: Option<Vec<GMatrix>>,
}

impl MatrixGroup {
    /// Generators only; usable for orbit computations of any group size.
    pub fn from_generators(ambient: Ambient, generators: Vec<GMatrix>) -> Result<MatrixGroup> {
        if let Some(g) = generators.iter().find(|g| g.ambient != ambient) {
            return Err(Error::AmbientMismatch(format!("{ambient:?}"), format!("{:?}", g.ambient)));
        }
        Ok(MatrixGroup { ambient, generators, elements: None })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn generators(&self) -> &[GMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> Option<&[GMatrix]> {
        self.elements.as_deref()
    }

    pub fn order(&self) -> Option<u64> {
        self.elements.as_ref().map(|e| e.len() as u64)
    }
}

/// Breadth-first closure of the generators; refuses once more than `budget`
/// elements are found.
pub fn generate_group(ambient: Ambient, gens: &[GMatrix], budget: u64) -> Result<MatrixGroup> {
    for g in gens {
        if g.ambient != ambient {
            return Err(Error::AmbientMismatch(format!("{ambient:?}"), format!("{:?}", g.ambient)));
        }
        if Subspace::span_words(ambient, g.rows.iter().copied()).dim() != ambient.v() {
            return Err(Error::SingularMatrix);
        }
    }
    let id = GMatrix::identity(ambient);
    let mut seen: HashSet<GMatrix> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                if seen.len() as u64 > budget {
                    return Err(Error::BudgetExceeded { count: seen.len() as u64, budget });
                }
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<GMatrix> = seen.into_iter().collect();
    elements.sort();
    Ok(MatrixGroup { ambient, generators: gens.to_vec(), elements: Some(elements) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub representative: SubspaceId,
    /// Sorted ids.
    pub members: Vec<SubspaceId>,
}

/// Orbits on all k-subspaces, sorted by representative (the least member).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    pub k: usize,
    pub orbits: Vec<Orbit>,
}

impl OrbitPartition {
    /// Orbit size -> number of orbits.
    pub fn signature(&self) -> std::collections::BTreeMap<usize, usize> {
        let mut m = std::collections::BTreeMap::new();
        for o in &self.orbits {
            *m.entry(o.members.len()).or_insert(0) += 1;
        }
        m
    }

    pub fn orbit_of(&self, id: SubspaceId) -> Option<usize> {
        self.orbits.iter().position(|o| o.members.binary_search(&id).is_ok())
    }
}

/// Orbits of the group generated by `g` on k-subspaces, by union-find over
/// generator images.
pub fn orbit_partition(g: &MatrixGroup, k: usize) -> Result<OrbitPartition> {
    let en = SubspaceEnumeration::new(g.ambient, k)?;
    let n = en.len();
    let mut uf = UnionFind::<usize>::new(n);
    let images: Vec<Vec<usize>> = en
        .iter()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|s| g.generators.iter().map(|m| en.rank(&act(m, s).unwrap()).unwrap().0 as usize).collect())
        .collect();
    for (i, imgs) in images.iter().enumerate() {
        for &j in imgs {
            uf.union(i, j);
        }
    }
    let mut by_root: HashMap<usize, Vec<SubspaceId>> = HashMap::new();
    for i in 0..n {
        by_root.entry(uf.find(i)).or_default().push(SubspaceId(i as u64));
    }
    let mut orbits: Vec<Orbit> = by_root
        .into_values()
        .map(|mut members| {
            members.sort();
            Orbit { representative: members[0], members }
        })
        .collect();
    orbits.sort_by_key(|o| o.representative);
    Ok(OrbitPartition { k, orbits })
}

/// Orbit of a set of subspaces (given as sorted ids) under the generators.
pub fn set_orbit(g: &MatrixGroup, en: &SubspaceEnumeration, set: &[SubspaceId]) -> Result<Vec<Vec<SubspaceId>>> {
    let map_set = |m: &GMatrix, s: &[SubspaceId]| -> Vec<SubspaceId> {
        let mut out: Vec<SubspaceId> =
            s.iter().map(|&id| en.rank(&act(m, en.get(id).unwrap()).unwrap()).unwrap()).collect();
        out.sort();
        out
    };
    let mut start = set.to_vec();
    start.sort();
    let mut seen = vec![start.clone()];
    let mut lookup: HashSet<Vec<SubspaceId>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        for m in &g.generators {
            let t = map_set(m, &s);
            if lookup.insert(t.clone()) {
                seen.push(t.clone());
                queue.push_back(t);
            }
        }
    }
    seen.sort();
    Ok(seen)
}

/// |GL(v, q)| with checked arithmetic.
pub fn gl_order(v: usize, q: u64) -> Result<u64> {
    let qv = q.checked_pow(v as u32).ok_or(Error::Overflow("|GL(v,q)|"))?;
    let mut acc: u64 = 1;
    let mut qi: u64 = 1;
    for _ in 0..v {
        acc = acc.checked_mul(qv - qi).ok_or(Error::Overflow("|GL(v,q)|"))?;
        qi *= q;
    }
    Ok(acc)
}

/// Where to look for stabilising matrices.
#[derive(Clone, Copy, Debug)]
pub enum Universe<'a> {
    /// All of GL(v, q), streamed; refused when |GL(v,q)| exceeds the budget.
    FullGl { budget: u64 },
    Group(&'a MatrixGroup),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerResult {
    /// Number of matrices in the universe fixing the set.
    pub gl_order: u64,
    /// The same count modulo scalars (only meaningful for the full GL universe).
    pub pgl_order: u64,
    /// Up to `keep` stabilising matrices, sorted.
    pub elements: Vec<GMatrix>,
}

/// Counts matrices that map `set` onto itself as a set of subspaces.
pub fn setwise_stabilizer(universe: Universe<'_>, ambient: Ambient, set: &[Subspace], keep: usize) -> Result<StabilizerResult> {
    if let Some(s) = set.iter().find(|s| s.ambient() != ambient) {
        return Err(Error::AmbientMismatch(format!("{ambient:?}"), format!("{:?}", s.ambient())));
    }
    let scalars = ambient.q() as u64 - 1;
    match universe {
        Universe::Group(g) => {
            let els = g.elements().ok_or_else(|| Error::InvalidParameters("group is not materialised".into()))?;
            let target: HashSet<&Subspace> = set.iter().collect();
            let mut found: Vec<GMatrix> = els
                .par_iter()
                .filter(|m| set.iter().all(|s| target.contains(&act(m, s).unwrap())))
                .cloned()
                .collect();
            found.sort();
            let n = found.len() as u64;
            found.truncate(keep);
            Ok(StabilizerResult { gl_order: n, pgl_order: n, elements: found })
        }
        Universe::FullGl { budget } => {
            let total = gl_order(ambient.v(), ambient.q() as u64)?;
            if total > budget {
                return Err(Error::BudgetExceeded { count: total, budget });
            }
            let (n, mut found) = if ambient.q() == 2 && set.iter().all(|s| s.dim() == 2) && ambient.v() >= 2 {
                gl2_line_stabilizer(ambient, set, keep)?
            } else {
                generic_stabilizer(ambient, set, keep)
            };
            found.sort();
            found.truncate(keep);
            Ok(StabilizerResult { gl_order: n, pgl_order: n / scalars, elements: found })
        }
    }
}

/// Count only.
pub fn setwise_stabilizer_order(universe: Universe<'_>, ambient: Ambient, set: &[Subspace]) -> Result<u64> {
    Ok(setwise_stabilizer(universe, ambient, set, 0)?.gl_order)
}

/// Calls `f` on every invertible matrix over F_2 (v ≤ 6) whose first row is
/// `first`; rows are extended one at a time outside the span of the previous
/// ones, with the span kept as a bitmask over words.
fn for_each_gl2_with_first(v: usize, first: u64, f: &mut impl FnMut(&[u64])) {
    fn rec(v: usize, rows: &mut [u64; 8], depth: usize, span: u64, f: &mut impl FnMut(&[u64])) {
        if depth == v {
            f(&rows[..v]);
            return;
        }
        for r in 1..(1u64 << v) {
            if span >> r & 1 == 1 {
                continue;
            }
            let mut shifted = 0u64;
            let mut s = span;
            while s != 0 {
                let x = s.trailing_zeros() as u64;
                shifted |= 1 << (x ^ r);
                s &= s - 1;
            }
            rows[depth] = r;
            rec(v, rows, depth + 1, span | shifted, f);
        }
    }
    assert!(v <= 6);
    let mut rows = [0u64; 8];
    rows[0] = first;
    rec(v, &mut rows, 1, 1 | 1 << first, f);
}

fn gl2_line_stabilizer(ambient: Ambient, set: &[Subspace], keep: usize) -> Result<(u64, Vec<GMatrix>)> {
    let v = ambient.v();
    let t = Pg2::new(v)?;
    let in_set: Vec<bool> = {
        let mut b = vec![false; t.line_count()];
        for s in set {
            b[t.line_id(s)] = true;
        }
        b
    };
    let ids: Vec<usize> = (0..t.line_count()).filter(|&i| in_set[i]).collect();
    let results: Vec<(u64, Vec<GMatrix>)> = (1..(1u64 << v))
        .into_par_iter()
        .map(|first| {
            let mut count = 0u64;
            let mut kept = Vec::new();
            for_each_gl2_with_first(v, first, &mut |rows| {
                let img = image_table(v, rows);
                let ok = ids.iter().all(|&id| {
                    let [a, b, _] = t.lines[id];
                    in_set[t.line_through(img[a as usize], img[b as usize])]
                });
                if ok {
                    count += 1;
                    if kept.len() < keep {
                        kept.push(GMatrix { ambient, rows: rows.to_vec() });
                    }
                }
            });
            (count, kept)
        })
        .collect();
    let n = results.iter().map(|r| r.0).sum();
    Ok((n, results.into_iter().flat_map(|r| r.1).collect()))
}

fn generic_stabilizer(ambient: Ambient, set: &[Subspace], keep: usize) -> (u64, Vec<GMatrix>) {
    let target: HashSet<&Subspace> = set.iter().collect();
    let v = ambient.v();
    let mut count = 0;
    let mut kept = Vec::new();
    let mut rows = Vec::new();
    fn rec(
        amb: Ambient,
        v: usize,
        rows: &mut Vec<u64>,
        visit: &mut dyn FnMut(&[u64]),
    ) {
        if rows.len() == v {
            visit(rows);
            return;
        }
        let span = Subspace::span_words(amb, rows.iter().copied());
        for r in amb.vectors().skip(1) {
            if !span.contains_word(r) {
                rows.push(r);
                rec(amb, v, rows, visit);
                rows.pop();
            }
        }
    }
    rec(ambient, v, &mut rows, &mut |rows| {
        let m = GMatrix { ambient, rows: rows.to_vec() };
        if set.iter().all(|s| target.contains(&act(&m, s).unwrap())) {
            count += 1;
            if kept.len() < keep {
                kept.push(m);
            }
        }
    });
    (count, kept)
}

/// The Singer cycle σ and the matrix φ for PG(5, 2), as fixed row literals.
pub fn singer_generators() -> (GMatrix, GMatrix) {
    let a = Ambient::new(6, 2).unwrap();
    let sigma = GMatrix::from_rows(a, &["010000", "001000", "000100", "000010", "000001", "110110"]).unwrap();
    let phi = GMatrix::from_rows(a, &["000101", "110000", "000011", "010000", "000001", "101011"]).unwrap();
    (sigma, phi)
}

/// Matrix literal file with σ and φ, for cross-checking the constants.
pub const SINGER_DATA: &str = include_str!("../data/singer.mat");

/// Some invertible g with g⁻¹ σ g = σ^j, found by solving σg = gσ^j linearly.
pub fn conjugating_power(sigma: &GMatrix, j: u64) -> Option<GMatrix> {
    let amb = sigma.ambient;
    let f = amb.field();
    let v = amb.v();
    let tau = sigma.pow(j);
    // unknown g[a][b] at index a*v + b
    let mut rows = Vec::new();
    for a in 0..v {
        for b in 0..v {
            let mut row = vec![0u8; v * v];
            for c in 0..v {
                row[c * v + b] = f.add(row[c * v + b], sigma.entry(a, c));
                row[a * v + c] = f.sub(row[a * v + c], tau.entry(c, b));
            }
            rows.push(row);
        }
    }
    let basis = nullspace(f, rows, v * v);
    let q = amb.q() as u64;
    let total = q.checked_pow(basis.len() as u32)?;
    (1..total).find_map(|mut idx| {
        let mut g = vec![0u8; v * v];
        for b in &basis {
            let c = (idx % q) as u8;
            idx /= q;
            for (x, &y) in g.iter_mut().zip(b) {
                *x = f.add(*x, f.mul(c, y));
            }
        }
        let rows: Vec<u64> = g.chunks(v).map(|r| amb.pack(r).unwrap()).collect();
        GMatrix::new(amb, rows).ok()
    })
}

/// Generators σ, g of the normaliser of ⟨σ⟩ for a Singer cycle of PG(v-1, 2):
/// g conjugates σ to σ², realising the Frobenius.
pub fn singer_normalizer_generators(sigma: &GMatrix) -> Option<Vec<GMatrix>> {
    Some(vec![sigma.clone(), conjugating_power(sigma, 2)?])
}

/// The three standard line-orbit representatives.
pub fn deza_orbit_representatives() -> [Subspace; 3] {
    let a = Ambient::new(6, 2).unwrap();
    let l = |x: &str, y: &str| Subspace::span_words(a, [a.parse(x).unwrap(), a.parse(y).unwrap()]);
    [l("100000", "011000"), l("100000", "001100"), l("010000", "001100")]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn singer_matrices() {
        let (s, p) = singer_generators();
        assert_eq!(s.order(100), Some(63));
        assert_eq!(s.row_strings()[0], "010000");
        assert_eq!(p.row_strings()[5], "101011");
        let a = s.ambient();
        let e1 = Subspace::span_words(a, [a.unit(0)]);
        assert_eq!(act(&s, &e1).unwrap(), Subspace::span_words(a, [a.unit(1)]));
        let full = Subspace::full(a);
        assert_eq!(act(&p, &full).unwrap(), full);
    }

    #[test]
    fn inverse_and_identity() {
        let (s, p) = singer_generators();
        let id = GMatrix::identity(s.ambient());
        assert_eq!(s.mul(&s.inverse()), id);
        assert_eq!(p.inverse().mul(&p), id);
        let a = Ambient::new(3, 3).unwrap();
        let m = GMatrix::from_rows(a, &["120", "011", "201"]).unwrap();
        assert_eq!(m.mul(&m.inverse()), GMatrix::identity(a));
        assert!(GMatrix::from_rows(a, &["120", "120", "001"]).is_err());
    }

    #[test]
    fn small_closures() {
        let a = Ambient::new(6, 2).unwrap();
        assert_eq!(generate_group(a, &[GMatrix::identity(a)], 10).unwrap().order(), Some(1));
        let (s, p) = singer_generators();
        assert_eq!(generate_group(a, &[s.pow(3), p.clone()], 1000).unwrap().order(), Some(63));
        assert!(matches!(generate_group(a, &[s.clone(), p], 100), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn normalizer_has_order_378() {
        let (s, _) = singer_generators();
        let g = conjugating_power(&s, 2).unwrap();
        assert_eq!(g.inverse().mul(&s).mul(&g), s.pow(2));
        let n = generate_group(s.ambient(), &singer_normalizer_generators(&s).unwrap(), 1000).unwrap();
        assert_eq!(n.order(), Some(378));
    }

    #[test]
    fn trivial_group_orbits() {
        let a = Ambient::new(6, 2).unwrap();
        let g = MatrixGroup::from_generators(a, vec![GMatrix::identity(a)]).unwrap();
        let p = orbit_partition(&g, 1).unwrap();
        assert_eq!(p.orbits.len(), 63);
        assert!(p.orbits.iter().all(|o| o.members.len() == 1));
    }

    #[test]
    fn gl_counts() {
        assert_eq!(gl_order(4, 2).unwrap(), 20160);
        assert_eq!(gl_order(5, 2).unwrap(), 9_999_360);
        assert_eq!(gl_order(6, 2).unwrap(), 20_158_709_760);
        let a = Ambient::new(4, 2).unwrap();
        let planes = SubspaceEnumeration::new(a, 2).unwrap().into_vec();
        assert_eq!(setwise_stabilizer_order(Universe::FullGl { budget: DEFAULT_GL_BUDGET }, a, &planes).unwrap(), 20160);
        let b = Ambient::new(6, 2).unwrap();
        assert!(matches!(
            setwise_stabilizer_order(Universe::FullGl { budget: DEFAULT_GL_BUDGET }, b, &[]),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn generic_gl_sweep() {
        let a = Ambient::new(2, 3).unwrap();
        let line = Subspace::span_words(a, [a.unit(0)]);
        let r = setwise_stabilizer(Universe::FullGl { budget: 1000 }, a, &[line], 100).unwrap();
        // upper triangular matrices in GL(2,3)
        assert_eq!(r.gl_order, 12);
        assert_eq!(r.pgl_order, 6);
        // the fast path and the generic path agree
        let b = Ambient::new(3, 2).unwrap();
        let l = Subspace::span_words(b, [b.unit(0), b.unit(1)]);
        let fast = setwise_stabilizer_order(Universe::FullGl { budget: 1000 }, b, &[l.clone()]).unwrap();
        assert_eq!(fast, generic_stabilizer(b, &[l], 0).0);
        assert_eq!(fast, 24);
    }

    fn arb_gl2(v: usize) -> impl Strategy<Value = GMatrix> {
        proptest::collection::vec(1u64..(1 << v), v).prop_filter_map("singular", move |rows| {
            GMatrix::new(Ambient::new(v, 2).unwrap(), rows).ok()
        })
    }

    proptest! {
        #[test]
        fn act_is_right_action(m1 in arb_gl2(5), m2 in arb_gl2(5), a in 1u64..32, b in 1u64..32) {
            let amb = m1.ambient();
            let s = Subspace::span_words(amb, [a, b]);
            prop_assert_eq!(act(&m1.mul(&m2), &s).unwrap(), act(&m2, &act(&m1, &s).unwrap()).unwrap());
            prop_assert_eq!(act(&m1, &s).unwrap().dim(), s.dim());
        }
    }
}
