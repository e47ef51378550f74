use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::PointTable;
use crate::error::{Error, Result};
use crate::graph::QaryGraph;
use crate::space::{Ambient, Subspace};

/// Point-line geometry: all points of the ambient space and a set of lines.
#[derive(Clone, Debug)]
pub struct IncidenceGeometry {
    ambient: Ambient,
    points: PointTable,
    lines: Vec<Subspace>,
    /// Point ids on each line.
    line_points: Vec<Vec<usize>>,
    /// Line ids through each point.
    point_lines: Vec<Vec<usize>>,
}

impl IncidenceGeometry {
    pub fn new(ambient: Ambient, lines: Vec<Subspace>) -> Result<IncidenceGeometry> {
        let points = PointTable::new(ambient);
        let mut point_lines = vec![Vec::new(); points.len()];
        let mut line_points = Vec::with_capacity(lines.len());
        for (id, l) in lines.iter().enumerate() {
            if l.ambient() != ambient || l.dim() != 2 {
                return Err(Error::InvalidParameters(format!("{l:?} is not a line of {ambient:?}")));
            }
            let pts: Vec<usize> = l.point_words().iter().map(|&w| points.index_of(w).unwrap()).collect();
            for &p in &pts {
                point_lines[p].push(id);
            }
            line_points.push(pts);
        }
        Ok(IncidenceGeometry { ambient, points, lines, line_points, point_lines })
    }

    pub fn from_graph(g: &QaryGraph) -> IncidenceGeometry {
        IncidenceGeometry::new(g.ambient(), g.edges().to_vec()).expect("graph edges are lines")
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn points(&self) -> &PointTable {
        &self.points
    }

    pub fn lines(&self) -> &[Subspace] {
        &self.lines
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn lines_through(&self, p: usize) -> &[usize] {
        &self.point_lines[p]
    }

    /// Incidence-graph neighbours; vertices 0..P are points, P.. are lines.
    fn neighbours(&self, u: usize) -> &[usize] {
        let np = self.points.len();
        if u < np {
            &self.point_lines[u]
        } else {
            &self.line_points[u - np]
        }
    }

    fn vertex_id(&self, u: usize, is_line: bool) -> usize {
        if is_line {
            u + self.points.len()
        } else {
            u
        }
    }

    /// BFS distances in the incidence graph; `u32::MAX` when unreachable.
    pub fn distances_from_point(&self, p: usize) -> Vec<u32> {
        self.bfs(self.vertex_id(p, false)).0
    }

    fn bfs(&self, root: usize) -> (Vec<u32>, u32) {
        let np = self.points.len();
        let n = np + self.lines.len();
        let mut dist = vec![u32::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut girth = u32::MAX;
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w0 in self.neighbours(u) {
                let w = if u < np { w0 + np } else { w0 };
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    girth = girth.min(dist[u] + dist[w] + 1);
                }
            }
        }
        (dist, girth)
    }

    /// (girth, diameter) of the incidence graph restricted to points on some
    /// line and all lines; `None` entries mean acyclic resp. disconnected.
    pub fn girth_and_diameter(&self) -> (Option<u32>, Option<u32>) {
        let np = self.points.len();
        let roots: Vec<usize> = (0..np + self.lines.len())
            .filter(|&u| u >= np || !self.point_lines[u].is_empty())
            .collect();
        let per_root: Vec<(u32, u32)> = roots
            .par_iter()
            .map(|&r| {
                let (dist, girth) = self.bfs(r);
                let ecc = roots.iter().map(|&u| dist[u]).max().unwrap_or(0);
                (girth, ecc)
            })
            .collect();
        let girth = per_root.iter().map(|x| x.0).min().filter(|&g| g != u32::MAX);
        let diam = per_root.iter().map(|x| x.1).max().filter(|&d| d != u32::MAX);
        (girth, diam)
    }

    /// Number of points at each incidence distance from point `p`.
    pub fn point_distance_census(&self, p: usize) -> BTreeMap<u32, usize> {
        let dist = self.distances_from_point(p);
        let mut census = BTreeMap::new();
        for d in &dist[..self.points.len()] {
            *census.entry(*d).or_insert(0) += 1;
        }
        census
    }
}

/// Incidence graph has diameter 6 and girth 12.
pub fn is_generalized_hexagon(geo: &IncidenceGeometry) -> bool {
    if geo.lines.is_empty() || geo.point_lines.iter().any(|l| l.is_empty()) {
        return false;
    }
    geo.girth_and_diameter() == (Some(12), Some(6))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub holds: bool,
    /// Points whose distance-≤4 set is not the point set of a hyperplane.
    pub failures: Vec<Subspace>,
    /// Size of the distance-≤4 set, per point id.
    pub near_sizes: Vec<usize>,
}

/// For every point P: the points at incidence distance at most 4 are exactly
/// the points of a hyperplane.
pub fn regular_embedding_checks(g: &QaryGraph) -> EmbeddingReport {
    let geo = IncidenceGeometry::from_graph(g);
    let amb = g.ambient();
    let hyper_size = crate::enumerate::gaussian_bracket(amb.v() as u32 - 1, amb.q() as u64).unwrap() as usize;
    let per_point: Vec<(bool, usize)> = (0..geo.point_count())
        .into_par_iter()
        .map(|p| {
            let dist = geo.distances_from_point(p);
            let near: Vec<u64> =
                (0..geo.point_count()).filter(|&x| dist[x] <= 4).map(|x| geo.points.vector(x)).collect();
            let span = Subspace::span_words(amb, near.iter().copied());
            (span.dim() + 1 == amb.v() && near.len() == hyper_size, near.len())
        })
        .collect();
    let failures: Vec<Subspace> =
        per_point.iter().enumerate().filter(|(_, r)| !r.0).map(|(p, _)| geo.points.subspace(p)).collect();
    EmbeddingReport { holds: failures.is_empty(), failures, near_sizes: per_point.iter().map(|r| r.1).collect() }
}

/// Census of points by incidence distance (0, 2, 4, 6, ...) from every point.
pub fn distance_censuses(g: &QaryGraph) -> Vec<BTreeMap<u32, usize>> {
    let geo = IncidenceGeometry::from_graph(g);
    (0..geo.point_count()).into_par_iter().map(|p| geo.point_distance_census(p)).collect()
}

/// The plane spanned by the lines through P.
pub fn pi_plane(g: &QaryGraph, p: &Subspace) -> Result<Subspace> {
    let n = g.neighborhood(p)?;
    match n.closure {
        Some(c) if c.dim() == 3 => Ok(c),
        _ => Err(Error::InvalidParameters(format!("neighbourhood of {p:?} is not a plane"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_plane_is_not_a_hexagon() {
        let g = QaryGraph::complete(3, 2).unwrap();
        let geo = IncidenceGeometry::from_graph(&g);
        assert_eq!(geo.girth_and_diameter(), (Some(6), Some(3)));
        assert!(!is_generalized_hexagon(&geo));
    }

    #[test]
    fn empty_geometry() {
        let g = QaryGraph::empty(3, 2).unwrap();
        assert!(!is_generalized_hexagon(&IncidenceGeometry::from_graph(&g)));
    }

    #[test]
    fn single_line_census() {
        let a = Ambient::new(3, 2).unwrap();
        let l = Subspace::span_words(a, [a.unit(0), a.unit(1)]);
        let geo = IncidenceGeometry::new(a, vec![l]).unwrap();
        let c = geo.point_distance_census(geo.points().index_of(a.unit(0)).unwrap());
        assert_eq!(c[&0], 1);
        assert_eq!(c[&2], 2);
        assert_eq!(c[&u32::MAX], 4);
        assert_eq!(geo.girth_and_diameter(), (None, Some(2)));
    }
}
