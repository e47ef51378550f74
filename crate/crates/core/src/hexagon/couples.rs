use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::badex::{BadexConfig, BadexOrbit, Mask5};
use super::incidence::{is_generalized_hexagon, IncidenceGeometry};
use crate::designs::{classify_deza, DezaParams, DezaReport};
use crate::error::{Error, Result};
use crate::graph::QaryGraph;
use crate::pg2::Pg2;
use crate::space::{Ambient, Subspace};

/// Set of points of PG(5, 2) as a bitmask over words 1..64.
type PointSet = u64;

fn bit(p: u64) -> PointSet {
    1 << p
}

/// A 15-line section stored as point-word triples.
type Section = Vec<[u64; 3]>;

/// Identifies a couple: which point of r \ {P} goes to H', and the indices
/// into the two candidate tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoupleKey {
    pub assignment: u8,
    pub first: u32,
    pub second: u32,
}

/// Three sections over the hyperplanes through a solid Σ of F_2^6.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoupleConfig {
    pub key: CoupleKey,
    pub sigma: Subspace,
    pub r: Subspace,
    /// Dual vectors of H, H', H''.
    pub duals: [u64; 3],
    pub sections: [Vec<Subspace>; 3],
    /// Σ ∪ S_H ∪ S_H' ∪ S_H'', increasing.
    pub x_points: Vec<u64>,
}

impl CoupleConfig {
    /// The 43 distinct lines of the three sections.
    pub fn lines(&self) -> Vec<Subspace> {
        let mut out: Vec<Subspace> = self.sections.iter().flatten().cloned().collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Candidate tables for the couple sweep, built once from the orbit.
#[derive(Clone, Debug)]
pub struct CoupleSetup {
    pub ambient: Ambient,
    /// Σ and r inside H = {x5 = 0}.
    pub sigma: Subspace,
    pub r: Subspace,
    /// The triple point of the base section on r.
    pub p: u64,
    /// The other two points of r.
    pub r_rest: [u64; 2],
    pub duals: [u64; 3],
    pub base: Section,
    /// `candidates[h][i]`: sections of H' (h = 0) or H'' (h = 1) whose triple
    /// point on r is `r_rest[i]`.
    pub candidates: [[Vec<Section>; 2]; 2],
    /// The twelve points of Σ \ r.
    pub sigma_off_r: Vec<u64>,
    base_reps: Vec<u64>,
    reps: [[Vec<Vec<u64>>; 2]; 2],
}

fn embed(y: u64) -> u64 {
    y << 1
}

fn section_words(t: &Pg2, m: &Mask5, f: impl Fn(u64) -> u64) -> Section {
    m.ones()
        .map(|id| {
            let mut l = t.lines[id].map(|p| f(embed(p as u64)));
            l.sort_unstable();
            l
        })
        .collect()
}

/// For each X, the smaller of the other two points on the unique section
/// line through X.
fn partner_reps(sec: &Section, xs: &[u64]) -> Result<Vec<u64>> {
    xs.iter()
        .map(|&x| {
            let mut through = sec.iter().filter(|l| l.contains(&x));
            match (through.next(), through.next()) {
                (Some(l), None) => Ok(l.iter().copied().filter(|&p| p != x).min().unwrap()),
                _ => Err(Error::SelfCheck(format!("point {x:#x} is not on exactly one section line"))),
            }
        })
        .collect()
}

fn rep(y: u64, x: u64) -> u64 {
    y.min(y ^ x)
}

impl CoupleSetup {
    /// Embeds the base configuration in H = {x5 = 0} of F_2^6; Σ is the
    /// given solid of F_2^5 whose only line of R is r.
    pub fn new(base: &BadexConfig, orbit: &BadexOrbit, sigma5: &Subspace) -> Result<CoupleSetup> {
        let a6 = Ambient::new(6, 2)?;
        let in_sigma: Vec<&Subspace> = base.lines.iter().filter(|l| sigma5.contains(l).unwrap_or(false)).collect();
        let [r5] = in_sigma.as_slice() else {
            return Err(Error::InvalidParameters("Σ must contain exactly one line of R".into()));
        };
        let r5 = (*r5).clone();
        let s_in: Vec<u64> = base.q_points.iter().copied().filter(|&p| sigma5.contains_word(p)).collect();
        let [p5] = s_in.as_slice() else {
            return Err(Error::InvalidParameters("Σ must contain exactly one triple point of R".into()));
        };
        if !r5.contains_word(*p5) {
            return Err(Error::SelfCheck("the triple point in Σ is off r".into()));
        }
        let sigma = sigma5.map_words(embed);
        let sigma = Subspace::span_words(a6, sigma.basis().to_vec());
        let r = Subspace::span_words(a6, r5.basis().iter().map(|&w| embed(w)));
        let p = embed(*p5);
        let rest: Vec<u64> = r.point_words().into_iter().filter(|&x| x != p).collect();
        let r_rest = [rest[0], rest[1]];

        let perp = sigma.perp();
        let h_dual = a6.unit(5);
        let h2 = perp.point_words().into_iter().find(|&w| w != h_dual).unwrap();
        let duals = [h_dual, h2, h2 ^ h_dual];
        let hyper: Vec<Subspace> = duals.iter().map(|&d| Subspace::span_words(a6, [d]).perp()).collect();
        let u = hyper[0].point_words().into_iter().find(|&x| !sigma.contains_word(x)).unwrap();
        let psi = |h: usize| {
            let uh = hyper[h].point_words().into_iter().find(|&x| !sigma.contains_word(x)).unwrap();
            let sg = sigma.clone();
            move |x: u64| if sg.contains_word(x) { x } else { x ^ u ^ uh }
        };

        let t = &orbit.table;
        let base_mask: Mask5 = t.mask(&base.lines);
        let base_sec = section_words(t, &base_mask, |x| x);
        let sigma_off_r: Vec<u64> =
            sigma.point_words().into_iter().filter(|&x| !r.contains_word(x)).collect();
        let base_reps = partner_reps(&base_sec, &sigma_off_r)?;

        let pools: Vec<Vec<Mask5>> = r_rest
            .iter()
            .map(|&q| orbit.candidates(sigma5, &r5, q >> 1))
            .collect();
        let mut candidates: [[Vec<Section>; 2]; 2] = Default::default();
        let mut reps: [[Vec<Vec<u64>>; 2]; 2] = Default::default();
        for h in 0..2 {
            let f = psi(h + 1);
            for i in 0..2 {
                let secs: Vec<Section> = pools[i].iter().map(|m| section_words(t, m, &f)).collect();
                reps[h][i] = secs.iter().map(|s| partner_reps(s, &sigma_off_r)).collect::<Result<_>>()?;
                candidates[h][i] = secs;
            }
        }
        Ok(CoupleSetup {
            ambient: a6,
            sigma,
            r,
            p,
            r_rest,
            duals,
            base: base_sec,
            candidates,
            sigma_off_r,
            base_reps,
            reps,
        })
    }

    /// Table sizes per assignment: (|H' candidates|, |H'' candidates|).
    pub fn pool_sizes(&self) -> [(usize, usize); 2] {
        [0, 1].map(|a| (self.candidates[0][a].len(), self.candidates[1][1 - a].len()))
    }

    /// Total number of candidate couples.
    pub fn candidate_count(&self) -> u64 {
        self.pool_sizes().iter().map(|&(x, y)| x as u64 * y as u64).sum()
    }

    fn coplanar(&self, key: &CoupleKey) -> bool {
        let a = key.assignment as usize;
        let b = &self.reps[0][a][key.first as usize];
        let c = &self.reps[1][1 - a][key.second as usize];
        self.sigma_off_r.iter().enumerate().all(|(k, &x)| {
            let ra = self.base_reps[k];
            let rb = b[k];
            let rc = c[k];
            rc == ra || rc == rb || rc == rep(ra ^ rb, x)
        })
    }

    /// Streams all candidate couples; `progress` receives the number of
    /// first-section indices finished for each assignment.
    pub fn enumerate_couples(&self, progress: &(dyn Fn(u64, u64) + Sync)) -> Vec<CoupleKey> {
        let total = self.candidate_count();
        let done = std::sync::atomic::AtomicU64::new(0);
        let mut out: Vec<CoupleKey> = (0..2u8)
            .flat_map(|a| {
                let (n1, n2) = self.pool_sizes()[a as usize];
                let done = &done;
                (0..n1 as u32)
                    .into_par_iter()
                    .flat_map_iter(move |i| {
                        let keep: Vec<CoupleKey> = (0..n2 as u32)
                            .map(move |j| CoupleKey { assignment: a, first: i, second: j })
                            .filter(|k| self.coplanar(k))
                            .collect();
                        let d = done.fetch_add(n2 as u64, std::sync::atomic::Ordering::Relaxed) + n2 as u64;
                        progress(d, total);
                        keep
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn couple(&self, key: &CoupleKey) -> Result<CoupleConfig> {
        let a = key.assignment as usize;
        let s1 = self.candidates[0][a]
            .get(key.first as usize)
            .ok_or_else(|| Error::InvalidParameters(format!("no candidate {key:?}")))?;
        let s2 = self.candidates[1][1 - a]
            .get(key.second as usize)
            .ok_or_else(|| Error::InvalidParameters(format!("no candidate {key:?}")))?;
        let amb = self.ambient;
        let subs = |s: &Section| -> Vec<Subspace> {
            let mut v: Vec<Subspace> = s.iter().map(|l| Subspace::span_words(amb, [l[0], l[1]])).collect();
            v.sort();
            v
        };
        let mut x: PointSet = 0;
        for p in self.sigma.point_words() {
            x |= bit(p);
        }
        for s in [&self.base, s1, s2] {
            x |= triple_set(s);
        }
        Ok(CoupleConfig {
            key: *key,
            sigma: self.sigma.clone(),
            r: self.r.clone(),
            duals: self.duals,
            sections: [subs(&self.base), subs(s1), subs(s2)],
            x_points: (1..64).filter(|&p| x & bit(p) != 0).collect(),
        })
    }

    /// SHA-256 over the candidate tables and the given keys, for checkpoints.
    pub fn fingerprint(&self, keys: &[CoupleKey]) -> String {
        let mut h = Sha256::new();
        for s in std::iter::once(&self.base).chain(self.candidates.iter().flatten().flatten()) {
            for l in s {
                for p in l {
                    h.update(p.to_le_bytes());
                }
            }
        }
        for k in keys {
            h.update([k.assignment]);
            h.update(k.first.to_le_bytes());
            h.update(k.second.to_le_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn triple_set(s: &Section) -> PointSet {
    let mut deg = [0u8; 64];
    for l in s {
        for &p in l {
            deg[p as usize] += 1;
        }
    }
    (1..64).filter(|&p| deg[p as usize] == 3).fold(0, |acc, p| acc | bit(p as u64))
}

/// Checks the 43-line structure: each point of X on three coplanar lines,
/// each other point on one.
pub fn check_couple(c: &CoupleConfig) -> Result<()> {
    let lines = c.lines();
    if lines.len() != 43 || c.x_points.len() != 33 {
        return Err(Error::SelfCheck(format!("{} lines, |X| = {}", lines.len(), c.x_points.len())));
    }
    let amb = c.sigma.ambient();
    for p in amb.vectors().skip(1) {
        let through: Vec<&Subspace> = lines.iter().filter(|l| l.contains_word(p)).collect();
        let in_x = c.x_points.binary_search(&p).is_ok();
        let ok = if in_x {
            through.len() == 3
                && Subspace::span_words(amb, through.iter().flat_map(|l| l.basis().iter().copied())).dim() == 3
        } else {
            through.len() == 1
        };
        if !ok {
            return Err(Error::SelfCheck(format!(
                "point {} lies on {} lines of the couple",
                amb.format(p),
                through.len()
            )));
        }
    }
    Ok(())
}

/// Lines of PG(5, 2) missing X, in none of H, H', H'', whose three pencils
/// close up outside X.
pub fn good_lines(c: &CoupleConfig, table: &Pg2) -> Vec<Subspace> {
    let x: PointSet = c.x_points.iter().fold(0, |acc, &p| acc | bit(p));
    let mut partner = [0u64; 64];
    for l in c.lines() {
        let pts = l.point_words();
        for &p in &pts {
            if x & bit(p) == 0 {
                partner[p as usize] = pts.iter().copied().find(|&q| q != p).unwrap();
            }
        }
    }
    let out_x = |p: u64| x & bit(p) == 0;
    table
        .lines
        .iter()
        .filter(|l| l.iter().all(|&p| out_x(p as u64)))
        .filter(|l| c.duals.iter().all(|&d| l.iter().any(|&p| (p as u64 & d).count_ones() % 2 == 1)))
        .filter(|l| {
            l.iter().all(|&p| {
                let p = p as u64;
                let a = l.iter().map(|&q| q as u64).find(|&q| q != p).unwrap();
                let b = partner[p as usize];
                out_x(a ^ b) && out_x(p ^ a ^ b)
            })
        })
        .map(|l| Subspace::span_words(table.ambient, [l[0] as u64, l[1] as u64]))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Extension {
    pub key: CoupleKey,
    #[serde(skip)]
    pub graph: QaryGraph,
    pub deza: DezaReport,
    pub generalized_hexagon: bool,
}

/// Adds the 20 good lines to the 43 section lines and classifies the result.
pub fn extend_and_identify(c: &CoupleConfig, good: &[Subspace]) -> Result<Extension> {
    if good.len() != 20 {
        return Err(Error::InvalidParameters(format!("extension needs 20 good lines, got {}", good.len())));
    }
    let mut lines = c.lines();
    lines.extend(good.iter().cloned());
    let g = QaryGraph::new(c.sigma.ambient(), lines)?;
    if g.edge_count() != 63 {
        return Err(Error::SelfCheck(format!("union has {} lines", g.edge_count())));
    }
    let deza = classify_deza(&g)?;
    if deza.params != DezaParams::new(6, 2, 1, 0, 2) {
        return Err(Error::SelfCheck(format!("extension classifies as {:?}", deza.params)));
    }
    let generalized_hexagon = is_generalized_hexagon(&IncidenceGeometry::from_graph(&g));
    Ok(Extension { key: c.key, graph: g, deza, generalized_hexagon })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hexagon::badex::{badex_orbit, build_badex, single_line_solids};
    use std::collections::BTreeMap;

    #[test]
    fn couples_and_good_lines() {
        let b = build_badex().unwrap();
        let orbit = badex_orbit(&b, 2_000_000).unwrap();
        let solid = single_line_solids(&b).unwrap()[0].solid.clone();
        let setup = CoupleSetup::new(&b, &orbit, &solid).unwrap();
        assert_eq!(setup.candidate_count(), 2 * 1536 * 1536);
        let keys = setup.enumerate_couples(&|_, _| {});
        assert_eq!(keys.len(), 1120);
        let table = Pg2::new(6).unwrap();
        let mut hist = BTreeMap::new();
        let (mut deza, mut other) = (0, 0);
        for k in &keys {
            let c = setup.couple(k).unwrap();
            check_couple(&c).unwrap();
            let g = good_lines(&c, &table);
            *hist.entry(g.len()).or_insert(0) += 1;
            if g.len() == 20 {
                match extend_and_identify(&c, &g) {
                    Ok(e) => {
                        assert!(!e.generalized_hexagon);
                        deza += 1;
                    }
                    Err(_) => other += 1,
                }
            }
        }
        assert_eq!(hist, BTreeMap::from([(2, 288), (3, 128), (4, 160), (5, 192), (6, 96), (20, 256)]));
        assert_eq!((deza, other), (192, 64));
    }
}
