use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::QaryGraph;
use crate::space::{Ambient, Subspace};

/// Restriction of a line set to a hyperplane. GF(2) only; points are words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionReport {
    pub hyperplane: Subspace,
    /// Dual vector h with H = h⊥, when H is a proper hyperplane of the ambient.
    pub dual: Option<u64>,
    /// Lines inside H, canonical order.
    pub lines: Vec<Subspace>,
    /// Points of H on three lines, increasing.
    pub s_points: Vec<u64>,
    /// Number of points of H on one line.
    pub degree_one: usize,
}

impl SectionReport {
    /// Builds the report from the lines inside `hyperplane`; every point of
    /// H must lie on 1 or 3 of them.
    pub fn from_lines(hyperplane: Subspace, dual: Option<u64>, lines: Vec<Subspace>) -> Result<SectionReport> {
        if hyperplane.ambient().q() != 2 {
            return Err(Error::InvalidParameters("sections are implemented over F_2".into()));
        }
        let mut deg: BTreeMap<u64, usize> = hyperplane.point_words().into_iter().map(|p| (p, 0)).collect();
        for l in &lines {
            for p in l.point_words() {
                *deg.get_mut(&p).ok_or_else(|| Error::SelfCheck(format!("{l:?} leaves the hyperplane")))? += 1;
            }
        }
        if let Some((p, d)) = deg.iter().find(|(_, &d)| d != 1 && d != 3) {
            return Err(Error::SelfCheck(format!(
                "point {} lies on {d} section lines",
                hyperplane.ambient().format(*p)
            )));
        }
        let s_points = deg.iter().filter(|(_, &d)| d == 3).map(|(&p, _)| p).collect();
        let degree_one = deg.values().filter(|&&d| d == 1).count();
        Ok(SectionReport { hyperplane, dual, lines, s_points, degree_one })
    }

    pub fn ambient(&self) -> Ambient {
        self.hyperplane.ambient()
    }

    /// The three section lines through an S-point span this plane.
    pub fn pi(&self, t: u64) -> Option<Subspace> {
        let through: Vec<&Subspace> = self.lines.iter().filter(|l| l.contains_word(t)).collect();
        if through.len() != 3 {
            return None;
        }
        let s = Subspace::span_words(self.ambient(), through.iter().flat_map(|l| l.basis().iter().copied()));
        (s.dim() == 3).then_some(s)
    }

    /// Section lines through a point.
    pub fn lines_through(&self, p: u64) -> impl Iterator<Item = &Subspace> {
        self.lines.iter().filter(move |l| l.contains_word(p))
    }
}

/// Hyperplanes h⊥ of F_2^v in increasing order of h.
pub fn hyperplanes(amb: Ambient) -> Vec<(u64, Subspace)> {
    amb.vectors().skip(1).map(|h| (h, Subspace::span_words(amb, [h]).perp())).collect()
}

/// Section of a graph in the hyperplane h⊥.
pub fn hyperplane_section(g: &QaryGraph, dual: u64) -> Result<SectionReport> {
    let amb = g.ambient();
    if dual == 0 || !amb.is_valid(dual) {
        return Err(Error::InvalidVector(format!("{dual:#x}")));
    }
    let h = Subspace::span_words(amb, [dual]).perp();
    let lines: Vec<Subspace> = g.edges().iter().filter(|e| e.basis().iter().all(|&b| h.contains_word(b))).cloned().collect();
    SectionReport::from_lines(h, Some(dual), lines)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SectionCase {
    /// S_H is the point set of π_P.
    Pencil { center: u64 },
    /// No such P; |S_H ∩ π_T| per S-point, with values in {3, 4}, both attained.
    Badex { sizes: BTreeMap<u64, usize> },
    /// Neither description applies.
    Other { sizes: BTreeMap<u64, usize> },
}

impl SectionCase {
    pub fn tag(&self) -> &'static str {
        match self {
            SectionCase::Pencil { .. } => "pencil",
            SectionCase::Badex { .. } => "badex",
            SectionCase::Other { .. } => "other",
        }
    }
}

pub fn section_case(rep: &SectionReport) -> SectionCase {
    let s: BTreeSet<u64> = rep.s_points.iter().copied().collect();
    let mut sizes = BTreeMap::new();
    for &t in &rep.s_points {
        let Some(pi) = rep.pi(t) else {
            return SectionCase::Other { sizes };
        };
        let pts = pi.point_words();
        if pts.iter().copied().collect::<BTreeSet<_>>() == s {
            return SectionCase::Pencil { center: t };
        }
        sizes.insert(t, pts.iter().filter(|p| s.contains(p)).count());
    }
    let vals: BTreeSet<usize> = sizes.values().copied().collect();
    if vals == BTreeSet::from([3, 4]) {
        SectionCase::Badex { sizes }
    } else {
        SectionCase::Other { sizes }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolidCount {
    pub solid: Subspace,
    pub points: usize,
    pub lines: usize,
}

/// Hyperplanes of `h` (subspaces of codimension one in h).
pub fn solids_of(h: &Subspace) -> Vec<Subspace> {
    let amb = h.ambient();
    let hp = h.perp();
    let mut out: BTreeSet<Subspace> = BTreeSet::new();
    for w in amb.vectors().skip(1) {
        if !hp.contains_word(w) {
            let s = Subspace::span_words(amb, hp.basis().iter().copied().chain([w])).perp();
            out.insert(s);
        }
    }
    out.into_iter().collect()
}

/// S-point and line counts in every solid of H; errors on the first solid
/// where they differ.
pub fn solid_census(rep: &SectionReport) -> Result<Vec<SolidCount>> {
    let out: Vec<SolidCount> = solids_of(&rep.hyperplane)
        .into_iter()
        .map(|solid| {
            let points = rep.s_points.iter().filter(|&&p| solid.contains_word(p)).count();
            let lines = rep.lines.iter().filter(|l| l.basis().iter().all(|&b| solid.contains_word(b))).count();
            SolidCount { solid, points, lines }
        })
        .collect();
    if let Some(bad) = out.iter().find(|c| c.points != c.lines) {
        return Err(Error::SelfCheck(format!(
            "solid {:?} has {} S-points but {} lines",
            bad.solid, bad.points, bad.lines
        )));
    }
    Ok(out)
}
