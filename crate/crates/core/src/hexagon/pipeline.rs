//! Drivers for the (6,2,1,0;2) classification: a fast tier (badex, its
//! stabiliser, solids, section dichotomy) and a full tier (orbit, z, couples,
//! good lines, extensions).

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::badex::{badex_case, badex_orbit, badex_orbit_z, badex_stabilizer, build_badex, single_line_solids, ZReport};
use super::couples::{check_couple, extend_and_identify, good_lines, CoupleKey, CoupleSetup};
use super::iso::find_collineation;
use super::section::{hyperplane_section, hyperplanes, section_case, solid_census, SectionCase};
use super::singer::singer_deza_graphs;
use super::construct::build_split_cayley_hexagon;
use crate::error::{Error, Result};
use crate::graph::QaryGraph;
use crate::groups::GMatrix;
use crate::pg2::Pg2;
use crate::space::Subspace;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProgressEvent {
    pub stage: &'static str,
    pub done: u64,
    pub total: u64,
}

pub type Progress<'a> = &'a (dyn Fn(ProgressEvent) + Sync);

/// Hyperplane-section statistics of one 63-line graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionSummary {
    pub instance: String,
    pub hyperplanes: usize,
    /// Distinct values of |E_H| and |S_H| over all hyperplanes.
    pub line_counts: BTreeSet<usize>,
    pub s_point_counts: BTreeSet<usize>,
    /// Hyperplanes (by dual word) where some degree is outside {1, 3}.
    pub degree_failures: Vec<u64>,
    /// Hyperplanes where some solid has unequal point and line counts.
    pub solid_failures: Vec<u64>,
    pub solids_checked: usize,
    pub tags: BTreeMap<String, usize>,
    /// Union of |S_H ∩ π_T| values over badex-type sections.
    pub badex_sizes: BTreeSet<usize>,
}

pub fn section_summary(instance: &str, g: &QaryGraph) -> SectionSummary {
    let mut out = SectionSummary {
        instance: instance.to_string(),
        hyperplanes: 0,
        line_counts: BTreeSet::new(),
        s_point_counts: BTreeSet::new(),
        degree_failures: Vec::new(),
        solid_failures: Vec::new(),
        solids_checked: 0,
        tags: BTreeMap::new(),
        badex_sizes: BTreeSet::new(),
    };
    for (h, _) in hyperplanes(g.ambient()) {
        out.hyperplanes += 1;
        let rep = match hyperplane_section(g, h) {
            Ok(r) => r,
            Err(_) => {
                out.degree_failures.push(h);
                continue;
            }
        };
        out.line_counts.insert(rep.lines.len());
        out.s_point_counts.insert(rep.s_points.len());
        match solid_census(&rep) {
            Ok(c) => out.solids_checked += c.len(),
            Err(_) => out.solid_failures.push(h),
        }
        let case = section_case(&rep);
        if let SectionCase::Badex { sizes } = &case {
            out.badex_sizes.extend(sizes.values().copied());
        }
        *out.tags.entry(case.tag().to_string()).or_insert(0) += 1;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FastReport {
    pub badex_lines: usize,
    pub badex_points_covered: usize,
    pub badex_residual_lines: usize,
    pub badex_tag: String,
    pub badex_intersection_sizes: BTreeSet<usize>,
    pub stabilizer_order: u64,
    pub stabilizer_elements: Vec<GMatrix>,
    pub single_line_solids: usize,
    /// Each single-line solid meets ℓ in one point and misses P1, P2, P5, P6.
    pub single_line_solids_as_described: bool,
    pub sections: Vec<SectionSummary>,
}

pub fn run_fast(gl_budget: u64, progress: Progress<'_>) -> Result<FastReport> {
    let b = build_badex()?;
    let (tag, sizes) = match badex_case(&b) {
        SectionCase::Badex { sizes } => ("badex".to_string(), sizes.values().copied().collect()),
        other => (other.tag().to_string(), BTreeSet::new()),
    };
    progress(ProgressEvent { stage: "stabilizer", done: 0, total: 1 });
    let stab = badex_stabilizer(&b, gl_budget)?;
    progress(ProgressEvent { stage: "stabilizer", done: 1, total: 1 });
    let solids = single_line_solids(&b)?;
    let q = &b.q_points;
    let described = solids.iter().all(|s| {
        b.ell.point_words().iter().filter(|&&p| s.solid.contains_word(p)).count() == 1
            && [q[0], q[1], q[4], q[5]].iter().all(|&p| !s.solid.contains_word(p))
    });
    let mut instances = vec![("hexagon".to_string(), build_split_cayley_hexagon()?)];
    for (i, g) in singer_deza_graphs()?.into_iter().enumerate() {
        instances.push((format!("singer-{}", i + 1), g));
    }
    let total = instances.len() as u64;
    let sections = instances
        .iter()
        .enumerate()
        .map(|(i, (name, g))| {
            let s = section_summary(name, g);
            progress(ProgressEvent { stage: "sections", done: i as u64 + 1, total });
            s
        })
        .collect();
    Ok(FastReport {
        badex_lines: b.lines.len(),
        badex_points_covered: b.covered,
        badex_residual_lines: b.residual.len(),
        badex_tag: tag,
        badex_intersection_sizes: sizes,
        stabilizer_order: stab.gl_order,
        stabilizer_elements: stab.elements,
        single_line_solids: solids.len(),
        single_line_solids_as_described: described,
        sections,
    })
}

/// Retained couples with fingerprints of the candidate tables and the keys.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub tables: String,
    pub keys_hash: String,
    pub keys: Vec<CoupleKey>,
}

#[derive(Clone, Debug, Default)]
pub struct FullOptions {
    /// Limit on stored orbit members.
    pub orbit_budget: u64,
    /// Skip the couple sweep and use these keys.
    pub resume: Option<Checkpoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityCase {
    pub key: CoupleKey,
    /// The 63-line union classifies as (6,2,1,0;2).
    pub deza: bool,
    pub generalized_hexagon: Option<bool>,
    /// A matrix mapping the union onto the first Singer Deza graph.
    pub singer_conjugator: Option<GMatrix>,
    /// Planes all of whose 7 lines lie in the union.
    pub complete_planes: usize,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FullReport {
    pub orbit_size: u64,
    pub z: ZReport,
    pub candidate_couples: u64,
    pub couples_retained: usize,
    pub resumed: bool,
    pub checkpoint: Checkpoint,
    pub good_line_histogram: BTreeMap<usize, usize>,
    pub max_good_lines: usize,
    pub equality_cases: Vec<EqualityCase>,
    pub equality_deza: usize,
    pub equality_singer_identified: usize,
    pub equality_non_deza: usize,
}

fn complete_planes(g: &QaryGraph) -> usize {
    let a = g.ambient();
    let mut planes: BTreeMap<Subspace, usize> = BTreeMap::new();
    for e in g.edges() {
        for w in a.vectors().skip(1).filter(|&w| !e.contains_word(w)) {
            let p = Subspace::span_words(a, e.basis().iter().copied().chain([w]));
            *planes.entry(p).or_insert(0) += 1;
        }
    }
    // each line of a plane is counted once per point of the plane off it
    planes.values().filter(|&&c| c == 7 * 4).count()
}

/// Full tier. `save` receives the checkpoint right after the couple sweep.
pub fn run_full(
    opts: &FullOptions,
    save: &mut dyn FnMut(&Checkpoint) -> Result<()>,
    progress: Progress<'_>,
) -> Result<(FullReport, Vec<QaryGraph>)> {
    let b = build_badex()?;
    progress(ProgressEvent { stage: "orbit", done: 0, total: 1_666_560 });
    let orbit = badex_orbit(&b, opts.orbit_budget)?;
    progress(ProgressEvent { stage: "orbit", done: orbit.len() as u64, total: orbit.len() as u64 });
    let solids = single_line_solids(&b)?;
    let solid = solids.first().ok_or_else(|| Error::SelfCheck("no single-line solid".into()))?;
    let r = b
        .lines
        .iter()
        .find(|l| solid.solid.contains(l).unwrap_or(false))
        .ok_or_else(|| Error::SelfCheck("single-line solid holds no line".into()))?;
    let p = r
        .point_words()
        .into_iter()
        .find(|&x| b.ell.contains_word(x))
        .ok_or_else(|| Error::SelfCheck("r misses ℓ".into()))?;
    let stab = (crate::groups::gl_order(5, 2)? / orbit.len().max(1) as u64).max(1);
    let z = badex_orbit_z(&orbit, stab, &solid.solid, r, p)?;

    let setup = CoupleSetup::new(&b, &orbit, &solid.solid)?;
    drop(orbit);
    let tables = setup.fingerprint(&[]);
    let (keys, resumed) = match &opts.resume {
        Some(cp) => {
            if cp.tables != tables || cp.keys_hash != setup.fingerprint(&cp.keys) {
                return Err(Error::InvalidParameters("checkpoint does not match the candidate tables".into()));
            }
            (cp.keys.clone(), true)
        }
        None => {
            let total = setup.candidate_count();
            let step = (total / 100).max(1);
            let last = std::sync::atomic::AtomicU64::new(0);
            let keys = setup.enumerate_couples(&|done, total| {
                let prev = last.load(std::sync::atomic::Ordering::Relaxed);
                if done / step > prev / step || done == total {
                    last.store(done, std::sync::atomic::Ordering::Relaxed);
                    progress(ProgressEvent { stage: "couples", done, total });
                }
            });
            (keys, false)
        }
    };
    let checkpoint = Checkpoint { tables, keys_hash: setup.fingerprint(&keys), keys: keys.clone() };
    if !resumed {
        save(&checkpoint)?;
    }

    let table = Pg2::new(6)?;
    let singer = singer_deza_graphs()?;
    let reference = singer.first().ok_or_else(|| Error::SelfCheck("no Singer Deza graph".into()))?;
    let done = std::sync::atomic::AtomicU64::new(0);
    let total = keys.len() as u64;
    let per_couple: Vec<(usize, Option<(EqualityCase, Option<QaryGraph>)>)> = keys
        .par_iter()
        .map(|k| -> Result<_> {
            let c = setup.couple(k)?;
            check_couple(&c)?;
            let good = good_lines(&c, &table);
            let eq = if good.len() == 20 {
                Some(match extend_and_identify(&c, &good) {
                    Ok(e) => {
                        let conj = find_collineation(&e.graph, reference)?;
                        let planes = complete_planes(&e.graph);
                        (
                            EqualityCase {
                                key: *k,
                                deza: true,
                                generalized_hexagon: Some(e.generalized_hexagon),
                                singer_conjugator: conj,
                                complete_planes: planes,
                                failure: None,
                            },
                            Some(e.graph),
                        )
                    }
                    Err(err) => {
                        let mut lines = c.lines();
                        lines.extend(good.iter().cloned());
                        let g = QaryGraph::new(c.sigma.ambient(), lines)?;
                        (
                            EqualityCase {
                                key: *k,
                                deza: false,
                                generalized_hexagon: None,
                                singer_conjugator: None,
                                complete_planes: complete_planes(&g),
                                failure: Some(err.to_string()),
                            },
                            None,
                        )
                    }
                })
            } else {
                None
            };
            let d = done.fetch_add(1, std::sync::atomic::Ordering::Relaxed) + 1;
            if d % 64 == 0 || d == total {
                progress(ProgressEvent { stage: "good-lines", done: d, total });
            }
            Ok((good.len(), eq))
        })
        .collect::<Result<_>>()?;
    let mut hist = BTreeMap::new();
    let mut cases = Vec::new();
    let mut graphs = Vec::new();
    for (n, eq) in per_couple {
        *hist.entry(n).or_insert(0) += 1;
        if let Some((case, g)) = eq {
            cases.push(case);
            graphs.extend(g);
        }
    }
    let equality_deza = cases.iter().filter(|c| c.deza).count();
    let equality_singer_identified =
        cases.iter().filter(|c| c.deza && c.generalized_hexagon == Some(false) && c.singer_conjugator.is_some()).count();
    let report = FullReport {
        orbit_size: z.orbit_size,
        candidate_couples: setup.candidate_count(),
        couples_retained: keys.len(),
        resumed,
        checkpoint,
        max_good_lines: hist.keys().max().copied().unwrap_or(0),
        good_line_histogram: hist,
        equality_deza,
        equality_singer_identified,
        equality_non_deza: cases.len() - equality_deza,
        equality_cases: cases,
        z,
    };
    Ok((report, graphs))
}


#[cfg(test)]
mod full_tests {
    use super::*;

    #[test]
    fn full_tier_resumes() {
        let opts = FullOptions { orbit_budget: 2_000_000, resume: None };
        let mut saved = None;
        let (r, graphs) = run_full(&opts, &mut |c| {
            saved = Some(c.clone());
            Ok(())
        }, &|_| {})
        .unwrap();
        assert_eq!((r.orbit_size, r.z.z, r.couples_retained, r.max_good_lines), (1_666_560, 1536, 1120, 20));
        assert_eq!((r.equality_deza, r.equality_singer_identified, r.equality_non_deza), (192, 192, 64));
        assert!(r.equality_cases.iter().all(|c| c.deza == (c.complete_planes == 0)));
        assert_eq!(graphs.len(), r.equality_deza);
        let again = FullOptions { orbit_budget: 2_000_000, resume: saved };
        let (r2, _) = run_full(&again, &mut |_| panic!("no save on resume"), &|_| {}).unwrap();
        assert!(r2.resumed);
        assert_eq!(r2.good_line_histogram, r.good_line_histogram);
    }
}
