use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use super::section::{section_case, solid_census, SectionCase, SectionReport, SolidCount};
use crate::error::{Error, Result};
use crate::groups::{gl_order, setwise_stabilizer, StabilizerResult, Universe};
use crate::pg2::{image_table, LineMask, Pg2};
use crate::space::{Ambient, Subspace};

/// Line masks over the 155 lines of PG(4, 2).
pub type Mask5 = LineMask<3>;

/// The 15-line configuration R in F_2^5 with seven triple points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BadexConfig {
    #[serde(skip)]
    pub ambient: Ambient,
    /// P1..P7.
    pub q_points: [u64; 7],
    pub lines: Vec<Subspace>,
    /// {P3, P4, P7}.
    pub ell: Subspace,
    /// ⟨P1, P2, P5⟩.
    pub gamma: Subspace,
    /// The two lines of R missing Q.
    pub residual: Vec<Subspace>,
    /// Points covered by the 13 lines through Q.
    pub covered: usize,
}

impl BadexConfig {
    /// The three points of γ outside {P1, P2, P5, P6}, a line.
    pub fn m(&self) -> Subspace {
        let q = &self.q_points;
        let rest: Vec<u64> =
            self.gamma.point_words().into_iter().filter(|p| ![q[0], q[1], q[4], q[5]].contains(p)).collect();
        Subspace::span_words(self.ambient, rest)
    }

    pub fn section(&self) -> SectionReport {
        SectionReport::from_lines(Subspace::full(self.ambient), None, self.lines.clone())
            .expect("validated at construction")
    }
}

pub fn build_badex() -> Result<BadexConfig> {
    let a = Ambient::new(5, 2)?;
    let p: Vec<u64> = (0..5).map(|i| a.unit(i)).collect();
    let (p1, p2, p3, p4, p5) = (p[0], p[1], p[2], p[3], p[4]);
    let p6 = p1 ^ p2 ^ p5;
    let p7 = p3 ^ p4;
    let pairs = [
        (p1, p2),
        (p2, p3),
        (p3, p4),
        (p4, p5),
        (p5, p1),
        (p1, p6),
        (p6, p7),
        (p2, p1 ^ p3),
        (p3, p2 ^ p4),
        (p7, p3 ^ p6),
        (p4, p3 ^ p5),
        (p5, p1 ^ p4),
        (p6, p1 ^ p7),
        (p1 ^ p2 ^ p4, p2 ^ p3 ^ p5),
        (p1 ^ p3 ^ p5, p2 ^ p4 ^ p5),
    ];
    let mut lines: Vec<Subspace> = pairs.iter().map(|&(x, y)| Subspace::span_words(a, [x, y])).collect();
    lines.sort();
    lines.dedup();
    if lines.len() != 15 {
        return Err(Error::SelfCheck(format!("R has {} distinct lines", lines.len())));
    }
    let q_points = [p1, p2, p3, p4, p5, p6, p7];
    let rep = SectionReport::from_lines(Subspace::full(a), None, lines.clone())?;
    let mut s = q_points.to_vec();
    s.sort_unstable();
    if rep.s_points != s {
        return Err(Error::SelfCheck(format!("triple points {:?} differ from Q", rep.s_points)));
    }
    for &t in &q_points {
        if rep.pi(t).is_none() {
            return Err(Error::SelfCheck(format!("lines through {} are not coplanar", a.format(t))));
        }
    }
    let (through, residual): (Vec<Subspace>, Vec<Subspace>) =
        lines.iter().cloned().partition(|l| q_points.iter().any(|&t| l.contains_word(t)));
    let covered: HashSet<u64> = through.iter().flat_map(|l| l.point_words()).collect();
    let rest: HashSet<u64> = a.vectors().skip(1).filter(|x| !covered.contains(x)).collect();
    let residual_pts: HashSet<u64> = residual.iter().flat_map(|l| l.point_words()).collect();
    if through.len() != 13 || covered.len() != 25 || residual.len() != 2 || residual_pts != rest {
        return Err(Error::SelfCheck(format!(
            "{} lines through Q cover {} points; residual lines {:?}",
            through.len(),
            covered.len(),
            residual
        )));
    }
    let ell = Subspace::span_words(a, [p3, p4]);
    let gamma = Subspace::span_words(a, [p1, p2, p5]);
    if ell.intersect(&gamma)?.dim() != 0 || !gamma.contains_word(p6) || !ell.contains_word(p7) {
        return Err(Error::SelfCheck("ℓ and γ are not as described".into()));
    }
    Ok(BadexConfig { ambient: a, q_points, lines, ell, gamma, residual, covered: covered.len() })
}

/// Section tag of R, expected "badex".
pub fn badex_case(b: &BadexConfig) -> SectionCase {
    section_case(&b.section())
}

/// The solids of F_2^5 containing exactly one line of R.
pub fn single_line_solids(b: &BadexConfig) -> Result<Vec<SolidCount>> {
    Ok(solid_census(&b.section())?.into_iter().filter(|c| c.lines == 1).collect())
}

/// Setwise stabilizer of R in GL(5, 2), by full sweep.
pub fn badex_stabilizer(b: &BadexConfig, budget: u64) -> Result<StabilizerResult> {
    setwise_stabilizer(Universe::FullGl { budget }, b.ambient, &b.lines, 6)
}

/// The GL(5, 2)-orbit of R as sorted line masks.
#[derive(Clone, Debug)]
pub struct BadexOrbit {
    pub table: Pg2,
    pub members: Vec<Mask5>,
}

/// Breadth-first closure of R under two generators of GL(5, 2): the cyclic
/// coordinate shift and the transvection e0 -> e0 + e1.
pub fn badex_orbit(b: &BadexConfig, budget: u64) -> Result<BadexOrbit> {
    let table = Pg2::new(5)?;
    let a = b.ambient;
    let shift: Vec<u64> = (0..5).map(|i| a.unit((i + 1) % 5)).collect();
    let mut trans: Vec<u64> = (0..5).map(|i| a.unit(i)).collect();
    trans[0] ^= a.unit(1);
    let gens = [image_table(5, &shift), image_table(5, &trans)];
    let start: Mask5 = table.mask(&b.lines);
    let mut seen: HashSet<Mask5> = HashSet::from([start]);
    let mut frontier = VecDeque::from([start]);
    while let Some(m) = frontier.pop_front() {
        for g in &gens {
            let img = table.map_mask(&m, g);
            if seen.insert(img) {
                if seen.len() as u64 > budget {
                    return Err(Error::BudgetExceeded { count: seen.len() as u64, budget });
                }
                frontier.push_back(img);
            }
        }
    }
    let mut members: Vec<Mask5> = seen.into_iter().collect();
    members.par_sort_unstable();
    Ok(BadexOrbit { table, members })
}

/// Triple points of a 15-line configuration in F_2^5.
pub(crate) fn triple_points(t: &Pg2, m: &Mask5) -> Vec<u64> {
    let mut deg = [0u8; 32];
    for id in m.ones() {
        for &p in &t.lines[id] {
            deg[p as usize] += 1;
        }
    }
    (1..32u64).filter(|&p| deg[p as usize] == 3).collect()
}

impl BadexOrbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Mask of all lines inside a subspace.
    pub fn lines_in(&self, s: &Subspace) -> Mask5 {
        let mut m = Mask5::EMPTY;
        for (id, l) in self.table.lines.iter().enumerate() {
            if l.iter().all(|&p| s.contains_word(p as u64)) {
                m.set(id);
            }
        }
        m
    }

    /// Members having exactly one line inside Σ.
    pub fn single_line_in(&self, sigma: &Subspace) -> impl ParallelIterator<Item = &Mask5> + '_ {
        let inside = self.lines_in(sigma);
        self.members.par_iter().filter(move |m| and(m, &inside).count() == 1)
    }

    /// Members whose only line in Σ is r and whose only triple point in Σ is `p`.
    pub fn candidates(&self, sigma: &Subspace, r: &Subspace, p: u64) -> Vec<Mask5> {
        let inside = self.lines_in(sigma);
        let mut rm = Mask5::EMPTY;
        rm.set(self.table.line_id(r));
        let mut out: Vec<Mask5> = self
            .members
            .par_iter()
            .filter(|m| and(m, &inside) == rm)
            .filter(|m| {
                let s: Vec<u64> = triple_points(&self.table, m).into_iter().filter(|&x| sigma.contains_word(x)).collect();
                s == [p]
            })
            .copied()
            .collect();
        out.sort_unstable();
        out
    }
}

fn and(a: &Mask5, b: &Mask5) -> Mask5 {
    LineMask([a.0[0] & b.0[0], a.0[1] & b.0[1], a.0[2] & b.0[2]])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZReport {
    pub orbit_size: u64,
    /// |GL(5,2)| / |stabilizer|.
    pub orbit_size_expected: u64,
    /// Orbit members with exactly one line in Σ.
    pub single_line_in_sigma: u64,
    /// Of those, the ones whose line is r.
    pub line_is_r: u64,
    /// Of those, the ones whose triple point in Σ is P: z.
    pub z: u64,
    /// orbit·3 / (31·35·3), when exact.
    pub z_shortcut: Option<u64>,
    pub paths_agree: bool,
    /// The digit-transposed orbit size 1666650 and whether it satisfies the double count.
    pub variant_orbit_size: u64,
    pub variant_consistent: bool,
}

/// z for (Σ, r, P) by filtering the orbit, with the double-count shortcut.
pub fn badex_orbit_z(orbit: &BadexOrbit, stabilizer_order: u64, sigma: &Subspace, r: &Subspace, p: u64) -> Result<ZReport> {
    let a = sigma.ambient();
    if a.v() != 5 || a.q() != 2 || sigma.dim() != 4 || r.dim() != 2 || !sigma.contains(r)? || !r.contains_word(p) {
        return Err(Error::InvalidParameters("need a solid Σ of F_2^5, a line r ⊆ Σ and a point P ∈ r".into()));
    }
    let inside = orbit.lines_in(sigma);
    let rid = orbit.table.line_id(r);
    let single: Vec<&Mask5> = orbit.single_line_in(sigma).collect();
    let on_r: Vec<&&Mask5> = single.iter().filter(|m| and(m, &inside).get(rid)).collect();
    let z = on_r
        .par_iter()
        .filter(|m| triple_points(&orbit.table, m).into_iter().filter(|&x| sigma.contains_word(x)).eq([p]))
        .count() as u64;
    let n = orbit.len() as u64;
    let denom = 31 * 35 * 3;
    let z_shortcut = (n * 3 % denom == 0).then_some(n * 3 / denom);
    let variant = 1_666_650u64;
    Ok(ZReport {
        orbit_size: n,
        orbit_size_expected: gl_order(5, 2)? / stabilizer_order.max(1),
        single_line_in_sigma: single.len() as u64,
        line_is_r: on_r.len() as u64,
        z,
        z_shortcut,
        paths_agree: z_shortcut == Some(z),
        variant_orbit_size: variant,
        variant_consistent: variant * 3 == z * denom,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn badex_invariants() {
        let b = build_badex().unwrap();
        assert_eq!(b.lines.len(), 15);
        assert_eq!(b.covered, 25);
        assert_eq!(b.residual.len(), 2);
        let m = b.m();
        assert_eq!(m.dim(), 2);
        let a = b.ambient;
        let (p1, p2, p5) = (a.unit(0), a.unit(1), a.unit(4));
        assert_eq!(m.point_words(), {
            let mut v = vec![p1 ^ p2, p1 ^ p5, p2 ^ p5];
            v.sort();
            v
        });
        match badex_case(&b) {
            SectionCase::Badex { sizes } => {
                assert_eq!(sizes.len(), 7);
                assert!(sizes.values().all(|&s| s == 3 || s == 4));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn three_single_line_solids() {
        let b = build_badex().unwrap();
        let q = &b.q_points;
        let solids = single_line_solids(&b).unwrap();
        assert_eq!(solids.len(), 3);
        for s in &solids {
            let on_ell = b.ell.point_words().iter().filter(|&&p| s.solid.contains_word(p)).count();
            assert_eq!(on_ell, 1);
            assert!([q[0], q[1], q[4], q[5]].iter().all(|&p| !s.solid.contains_word(p)));
            assert!(b.m().point_words().iter().all(|&p| s.solid.contains_word(p)));
        }
    }

    #[test]
    fn orbit_and_z() {
        let b = build_badex().unwrap();
        let orbit = badex_orbit(&b, 2_000_000).unwrap();
        assert_eq!(orbit.len(), 1_666_560);
        let solid = &single_line_solids(&b).unwrap()[0];
        let r = b.lines.iter().find(|l| solid.solid.contains(l).unwrap()).unwrap();
        let p = r.point_words().into_iter().find(|&x| b.ell.contains_word(x)).unwrap();
        let z = badex_orbit_z(&orbit, 6, &solid.solid, r, p).unwrap();
        assert_eq!(z.z, 1536);
        assert_eq!(z.z_shortcut, Some(1536));
        assert_eq!(z.single_line_in_sigma, 1_666_560 * 3 / 31);
        assert_eq!(z.line_is_r, 1536 * 3);
        assert!(!z.variant_consistent);
        assert_eq!(orbit.candidates(&solid.solid, r, p).len(), 1536);
    }
}
