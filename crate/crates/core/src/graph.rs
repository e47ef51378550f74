//! q-ary graphs: vertices are all 1-subspaces of F_q^v, edges a set of 2-subspaces.

use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::bits::Bits;
use crate::enumerate::{gaussian_bracket, PointTable, SubspaceEnumeration, SubspaceId};
use crate::error::{Error, Result};
use crate::space::{Ambient, Subspace};

/// A q-ary graph. Only the edge set is stored; the vertex set is implicit.
pub struct QaryGraph {
    ambient: Ambient,
    edges: Vec<Subspace>,
    index: OnceLock<GraphIndex>,
}

impl Clone for QaryGraph {
    fn clone(&self) -> Self {
        QaryGraph { ambient: self.ambient, edges: self.edges.clone(), index: OnceLock::new() }
    }
}

impl PartialEq for QaryGraph {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.edges == other.edges
    }
}

impl Eq for QaryGraph {}

impl fmt::Debug for QaryGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QaryGraph({:?}, {} edges)", self.ambient, self.edges.len())
    }
}

impl QaryGraph {
    /// Builds a graph from 2-subspaces; duplicates are merged.
    pub fn new(ambient: Ambient, edges: impl IntoIterator<Item = Subspace>) -> Result<QaryGraph> {
        let mut list: Vec<Subspace> = Vec::new();
        for e in edges {
            if e.ambient() != ambient {
                return Err(Error::AmbientMismatch(format!("{ambient:?}"), format!("{:?}", e.ambient())));
            }
            if e.dim() != 2 {
                return Err(Error::WrongDimension { expected: 2, got: e.dim() });
            }
            list.push(e);
        }
        list.sort_unstable();
        list.dedup();
        Ok(QaryGraph { ambient, edges: list, index: OnceLock::new() })
    }

    pub fn empty(v: usize, q: u32) -> Result<QaryGraph> {
        QaryGraph::new(Ambient::new(v, q)?, [])
    }

    pub fn complete(v: usize, q: u32) -> Result<QaryGraph> {
        let ambient = Ambient::new(v, q)?;
        let all = SubspaceEnumeration::new(ambient, 2)?.into_vec();
        Ok(QaryGraph { ambient, edges: all, index: OnceLock::new() })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    /// Edges in canonical order.
    pub fn edges(&self) -> &[Subspace] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, e: &Subspace) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    /// Edge ids within the canonical (v, 2, q) enumeration.
    pub fn edge_ids(&self, lines: &SubspaceEnumeration) -> Result<Vec<SubspaceId>> {
        if lines.ambient() != self.ambient || lines.k() != 2 {
            return Err(Error::InvalidParameters("enumeration must be of 2-subspaces of the same ambient".into()));
        }
        Ok(self.edges.iter().map(|e| lines.rank(e).expect("every edge is a 2-subspace")).collect())
    }

    pub fn index(&self) -> &GraphIndex {
        self.index.get_or_init(|| GraphIndex::build(self))
    }

    pub fn point_count(&self) -> usize {
        self.index().points.len()
    }

    fn point_of(&self, x: &Subspace) -> Result<usize> {
        if x.ambient() != self.ambient {
            return Err(Error::AmbientMismatch(format!("{:?}", self.ambient), format!("{:?}", x.ambient())));
        }
        if x.dim() != 1 {
            return Err(Error::WrongDimension { expected: 1, got: x.dim() });
        }
        Ok(self.index().points.index_of(x.basis()[0]).expect("normalised point"))
    }

    /// N(x): the vertices adjacent to x, and x itself.
    pub fn neighborhood(&self, x: &Subspace) -> Result<Neighborhood> {
        let i = self.point_of(x)?;
        Ok(self.index().neighborhood(i))
    }

    pub fn regularity(&self) -> RegularityReport {
        self.index().regularity()
    }

    /// Checks |E| = [v]_q [k]_q / [2]_q for a k-regular graph.
    pub fn edge_count_identity(&self, k: usize) -> Result<bool> {
        let report = self.regularity();
        if report.k != Some(k) {
            return Err(Error::InvalidParameters(format!("graph is not {k}-regular ({report:?})")));
        }
        let q = self.ambient.q() as u64;
        let lhs = (self.edges.len() as u128) * gaussian_bracket(2, q)? as u128;
        let rhs = gaussian_bracket(self.ambient.v() as u32, q)? as u128 * gaussian_bracket(k as u32, q)? as u128;
        Ok(lhs == rhs)
    }

    /// |(N(x) ∩ N(y)) \ {x, y}|.
    pub fn common_neighbors(&self, x: &Subspace, y: &Subspace) -> Result<u64> {
        let i = self.point_of(x)?;
        let j = self.point_of(y)?;
        if i == j {
            return Err(Error::InvalidParameters("common neighbours of a vertex with itself".into()));
        }
        Ok(self.index().common(i, j) as u64)
    }

    /// The simple graph on all points, u ~ w iff span(u, w) is an edge.
    pub fn collapse(&self) -> ClassicalGraph {
        let idx = self.index();
        let adj: Vec<Vec<u32>> =
            (0..idx.len()).into_par_iter().map(|i| idx.adj[i].ones().map(|j| j as u32).collect()).collect();
        ClassicalGraph { ambient: self.ambient, adj }
    }

    pub fn is_connected(&self) -> bool {
        self.collapse().is_connected()
    }
}

/// Point tables and neighbourhood bitsets for a graph.
#[derive(Debug)]
pub struct GraphIndex {
    pub points: PointTable,
    /// Open neighbourhoods.
    pub adj: Vec<Bits>,
    /// Closed neighbourhoods, N(x) including x.
    pub closed: Vec<Bits>,
    /// Point indices on each edge.
    pub edge_points: Vec<Vec<u32>>,
}

impl GraphIndex {
    fn build(g: &QaryGraph) -> GraphIndex {
        let points = PointTable::new(g.ambient);
        let n = points.len();
        let mut adj = vec![Bits::new(n); n];
        let edge_points: Vec<Vec<u32>> = g
            .edges
            .iter()
            .map(|e| e.point_words().iter().map(|&w| points.index_of(w).unwrap() as u32).collect())
            .collect();
        for pts in &edge_points {
            for &a in pts {
                for &b in pts {
                    if a != b {
                        adj[a as usize].set(b as usize);
                    }
                }
            }
        }
        let closed: Vec<Bits> = adj
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let mut c = b.clone();
                c.set(i);
                c
            })
            .collect();
        GraphIndex { points, adj, closed, edge_points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].get(j)
    }

    /// Common neighbour count for distinct point indices.
    #[inline]
    pub fn common(&self, i: usize, j: usize) -> usize {
        let both = self.closed[i].and_count(&self.closed[j]);
        if self.adjacent(i, j) {
            both - 2
        } else {
            both
        }
    }

    pub fn neighborhood(&self, i: usize) -> Neighborhood {
        let amb = self.points.ambient();
        let members: Vec<Subspace> = self.closed[i].ones().map(|j| self.points.subspace(j)).collect();
        let span = Subspace::span_words(amb, self.closed[i].ones().map(|j| self.points.vector(j)));
        let full = gaussian_bracket(span.dim() as u32, amb.q() as u64).unwrap() as usize;
        let closure = (full == members.len()).then_some(span);
        Neighborhood { center: self.points.subspace(i), members, closure }
    }

    /// Dimension of N(x) when it is a subspace.
    pub fn closure_dim(&self, i: usize) -> Option<usize> {
        let amb = self.points.ambient();
        let span = Subspace::span_words(amb, self.closed[i].ones().map(|j| self.points.vector(j)));
        let full = gaussian_bracket(span.dim() as u32, amb.q() as u64).unwrap() as usize;
        (full == self.closed[i].count()).then_some(span.dim())
    }

    pub fn regularity(&self) -> RegularityReport {
        let dims: Vec<Option<usize>> = (0..self.len()).into_par_iter().map(|i| self.closure_dim(i)).collect();
        let first = dims[0];
        for (i, d) in dims.iter().enumerate() {
            if d.is_none() || *d != first {
                return RegularityReport {
                    is_regular: false,
                    k: None,
                    witness: Some(self.points.subspace(i)),
                    neighborhood_size: Some(self.closed[i].count()),
                };
            }
        }
        RegularityReport { is_regular: true, k: first.map(|d| d - 1), witness: None, neighborhood_size: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neighborhood {
    pub center: Subspace,
    /// Sorted by point id, including the centre.
    pub members: Vec<Subspace>,
    /// The subspace whose points are exactly `members`, when there is one.
    pub closure: Option<Subspace>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub is_regular: bool,
    /// Neighbourhoods are (k+1)-dimensional.
    pub k: Option<usize>,
    /// First vertex whose neighbourhood is not a subspace or has a different dimension.
    pub witness: Option<Subspace>,
    pub neighborhood_size: Option<usize>,
}

/// The collapse of a q-ary graph: vertex i is the point with id i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalGraph {
    pub ambient: Ambient,
    /// Sorted adjacency lists.
    pub adj: Vec<Vec<u32>>,
}

impl ClassicalGraph {
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&(j as u32)).is_ok()
    }

    /// Size of the intersection of the open neighbourhoods, by sorted merge.
    pub fn common_neighbors(&self, i: usize, j: usize) -> usize {
        let (a, b) = (&self.adj[i], &self.adj[j]);
        let (mut x, mut y, mut n) = (0, 0, 0);
        while x < a.len() && y < b.len() {
            match a[x].cmp(&b[y]) {
                std::cmp::Ordering::Less => x += 1,
                std::cmp::Ordering::Greater => y += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    x += 1;
                    y += 1;
                }
            }
        }
        n
    }

    pub fn is_symmetric_irreflexive(&self) -> bool {
        (0..self.vertex_count())
            .all(|i| self.adj[i].iter().all(|&j| j as usize != i && self.adjacent(j as usize, i)))
    }

    /// Breadth-first traversal from vertex 0.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    queue.push_back(w as usize);
                }
            }
        }
        count == n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_subspaces;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn point(a: Ambient, s: &str) -> Subspace {
        Subspace::span_words(a, [a.parse(s).unwrap()])
    }

    #[test]
    fn empty_graph_neighborhood_is_the_vertex() {
        let g = QaryGraph::empty(4, 2).unwrap();
        let x = point(g.ambient(), "0110");
        let n = g.neighborhood(&x).unwrap();
        assert_eq!(n.members, vec![x.clone()]);
        assert_eq!(n.closure, Some(x));
        let r = g.regularity();
        assert!(r.is_regular);
        assert_eq!(r.k, Some(0));
    }

    #[test]
    fn complete_graph_neighborhood_is_everything() {
        let g = QaryGraph::complete(4, 2).unwrap();
        let n = g.neighborhood(&point(g.ambient(), "1000")).unwrap();
        assert_eq!(n.members.len(), 15);
        assert_eq!(n.closure.unwrap().dim(), 4);
        assert_eq!(g.regularity().k, Some(3));
        assert_eq!(QaryGraph::complete(3, 2).unwrap().edge_count(), 7);
        assert!(g.edge_count_identity(3).unwrap());
    }

    #[test]
    fn single_edge_is_not_regular() {
        let a = Ambient::new(4, 2).unwrap();
        let e = Subspace::span_words(a, [a.parse("1000").unwrap(), a.parse("0100").unwrap()]);
        let g = QaryGraph::new(a, [e]).unwrap();
        let r = g.regularity();
        assert!(!r.is_regular);
        assert!(r.witness.is_some());
        assert!(g.edge_count_identity(1).is_err());
    }

    #[test]
    fn neighborhood_rejects_non_points() {
        let g = QaryGraph::empty(4, 2).unwrap();
        let a = g.ambient();
        let line = Subspace::span_words(a, [a.unit(0), a.unit(1)]);
        assert!(matches!(g.neighborhood(&line), Err(Error::WrongDimension { .. })));
        let x = point(a, "1000");
        assert!(g.common_neighbors(&x, &x).is_err());
    }

    #[test]
    fn empty_graph_identities() {
        let g = QaryGraph::empty(6, 2).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert!(g.edge_count_identity(0).unwrap());
        let a = g.ambient();
        assert_eq!(g.common_neighbors(&point(a, "100000"), &point(a, "010000")).unwrap(), 0);
        let c = g.collapse();
        assert_eq!(c.vertex_count(), 63);
        assert!(c.adj.iter().all(|l| l.is_empty()));
        assert!(!g.is_connected());
    }

    #[test]
    fn complete_collapse_is_k7() {
        let c = QaryGraph::complete(3, 2).unwrap().collapse();
        assert_eq!(c.vertex_count(), 7);
        assert!((0..7).all(|i| c.degree(i) == 6));
        assert!(c.is_symmetric_irreflexive());
        assert!(QaryGraph::complete(3, 2).unwrap().is_connected());
    }

    #[test]
    fn rejects_non_lines_and_foreign_edges() {
        let a = Ambient::new(4, 2).unwrap();
        let b = Ambient::new(4, 3).unwrap();
        assert!(QaryGraph::new(a, [point(a, "1000")]).is_err());
        let foreign = Subspace::span_words(b, [b.unit(0), b.unit(1)]);
        assert!(QaryGraph::new(a, [foreign]).is_err());
    }

    fn random_graph(v: usize, q: u32, seed: u64, density: f64) -> QaryGraph {
        let a = Ambient::new(v, q).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut lines = enumerate_subspaces(v, 2, q).unwrap();
        lines.shuffle(&mut rng);
        let take = (lines.len() as f64 * density) as usize;
        QaryGraph::new(a, lines.into_iter().take(take)).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn common_neighbors_symmetric(seed in 0u64..1000, density in 0.0f64..1.0) {
            let g = random_graph(4, 2, seed, density);
            let idx = g.index();
            for i in 0..idx.len() {
                for j in 0..idx.len() {
                    if i != j {
                        prop_assert_eq!(idx.common(i, j), idx.common(j, i));
                    }
                }
            }
        }

        #[test]
        fn collapse_matches_edge_membership(seed in 0u64..1000, density in 0.0f64..1.0) {
            let g = random_graph(4, 3, seed, density);
            let c = g.collapse();
            let pts = &g.index().points;
            prop_assert!(c.is_symmetric_irreflexive());
            for i in 0..pts.len() {
                for j in i + 1..pts.len() {
                    let line = Subspace::span_words(g.ambient(), [pts.vector(i), pts.vector(j)]);
                    prop_assert_eq!(c.adjacent(i, j), g.has_edge(&line));
                }
            }
        }
    }
}
