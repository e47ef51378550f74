use std::collections::BTreeMap;

use serde::Serialize;

use super::incidence::{is_generalized_hexagon, IncidenceGeometry};
use super::iso::automorphisms;
use crate::designs::{classify_deza, classify_srg, DezaParams};
use crate::enumerate::{SubspaceEnumeration, SubspaceId};
use crate::error::{Error, Result};
use crate::graph::QaryGraph;
use crate::groups::{
    deza_orbit_representatives, generate_group, orbit_partition, set_orbit, singer_generators,
    singer_normalizer_generators, MatrixGroup, OrbitPartition, DEFAULT_GROUP_BUDGET,
};
use crate::space::Ambient;

/// K = ⟨σ³, φ⟩ and its line orbits, with the three (6,2,1,0;2) orbits.
#[derive(Clone, Debug)]
pub struct SingerExample {
    pub k: MatrixGroup,
    /// ⟨σ, φ⟩.
    pub n: MatrixGroup,
    /// ⟨σ, g⟩ with g⁻¹σg = σ².
    pub normalizer: MatrixGroup,
    pub lines: OrbitPartition,
    /// Indices into `lines.orbits` of the orbits that are (6,2,1,0;2)-graphs.
    pub deza_orbits: Vec<usize>,
    pub graphs: Vec<QaryGraph>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingerReport {
    pub sigma_phi_order: u64,
    pub k_order: u64,
    pub normalizer_order: u64,
    pub line_orbit_signature: BTreeMap<usize, usize>,
    pub deza_orbit_count: usize,
    /// Each known representative lies in a distinct Deza orbit.
    pub representatives_match: bool,
    /// Orbit sizes of ⟨σ, φ⟩ on the set of Deza orbits.
    pub n_action: Vec<usize>,
    /// The normaliser maps the set of three Deza orbits to itself.
    pub normalizer_preserves: bool,
    pub generalized_hexagon: Vec<bool>,
    pub strongly_regular: Vec<bool>,
    /// Collineation stabiliser order of each Deza orbit.
    pub automorphism_orders: Vec<u64>,
}

fn graph_of(en: &SubspaceEnumeration, ids: &[SubspaceId]) -> Result<QaryGraph> {
    QaryGraph::new(en.ambient(), ids.iter().map(|&id| en.get(id).unwrap().clone()))
}

pub fn singer_example() -> Result<SingerExample> {
    let a = Ambient::new(6, 2)?;
    let (sigma, phi) = singer_generators();
    let k = generate_group(a, &[sigma.pow(3), phi.clone()], DEFAULT_GROUP_BUDGET)?;
    let n = generate_group(a, &[sigma.clone(), phi], DEFAULT_GROUP_BUDGET)?;
    let gens = singer_normalizer_generators(&sigma)
        .ok_or_else(|| Error::SelfCheck("no matrix conjugates σ to σ²".into()))?;
    let normalizer = generate_group(a, &gens, DEFAULT_GROUP_BUDGET)?;
    let lines = orbit_partition(&k, 2)?;
    let en = SubspaceEnumeration::new(a, 2)?;
    let target = DezaParams::new(6, 2, 1, 0, 2);
    let mut deza_orbits = Vec::new();
    let mut graphs = Vec::new();
    for (i, o) in lines.orbits.iter().enumerate() {
        let g = graph_of(&en, &o.members)?;
        if matches!(classify_deza(&g), Ok(r) if r.params == target) {
            deza_orbits.push(i);
            graphs.push(g);
        }
    }
    Ok(SingerExample { k, n, normalizer, lines, deza_orbits, graphs })
}

/// The three Deza line orbits as graphs, in orbit order.
pub fn singer_deza_graphs() -> Result<Vec<QaryGraph>> {
    Ok(singer_example()?.graphs)
}

impl SingerExample {
    pub fn report(&self) -> Result<SingerReport> {
        let a = self.k.ambient();
        let en = SubspaceEnumeration::new(a, 2)?;
        let sets: Vec<Vec<SubspaceId>> =
            self.deza_orbits.iter().map(|&i| self.lines.orbits[i].members.clone()).collect();
        let reps = deza_orbit_representatives();
        let mut hit: Vec<usize> = reps
            .iter()
            .filter_map(|r| en.rank(r).and_then(|id| self.lines.orbit_of(id)))
            .filter(|i| self.deza_orbits.contains(i))
            .collect();
        hit.sort();
        hit.dedup();
        let mut n_action = Vec::new();
        let mut covered: Vec<&Vec<SubspaceId>> = Vec::new();
        for s in &sets {
            if covered.contains(&s) {
                continue;
            }
            let orbit = set_orbit(&self.n, &en, s)?;
            n_action.push(orbit.len());
            covered.extend(sets.iter().filter(|t| orbit.contains(t)));
        }
        let normalizer_preserves = match sets.first() {
            Some(s) => {
                let orbit = set_orbit(&self.normalizer, &en, s)?;
                orbit.iter().all(|t| sets.contains(t))
            }
            None => true,
        };
        let generalized_hexagon =
            self.graphs.iter().map(|g| is_generalized_hexagon(&IncidenceGeometry::from_graph(g))).collect();
        let strongly_regular =
            self.graphs.iter().map(|g| classify_srg(g).map(|r| r.is_some())).collect::<Result<Vec<_>>>()?;
        let automorphism_orders =
            self.graphs.iter().map(|g| automorphisms(g, 0).map(|r| r.0)).collect::<Result<Vec<_>>>()?;
        Ok(SingerReport {
            sigma_phi_order: self.n.order().unwrap_or(0),
            k_order: self.k.order().unwrap_or(0),
            normalizer_order: self.normalizer.order().unwrap_or(0),
            line_orbit_signature: self.lines.signature(),
            deza_orbit_count: self.deza_orbits.len(),
            representatives_match: hit.len() == 3,
            n_action,
            normalizer_preserves,
            generalized_hexagon,
            strongly_regular,
            automorphism_orders,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singer_report() {
        let r = singer_example().unwrap().report().unwrap();
        assert_eq!(r.sigma_phi_order, 189);
        assert_eq!(r.k_order, 63);
        assert_eq!(r.normalizer_order, 378);
        assert_eq!(r.line_orbit_signature, BTreeMap::from([(21, 1), (63, 10)]));
        assert_eq!(r.deza_orbit_count, 3);
        assert!(r.representatives_match);
        assert_eq!(r.n_action, vec![3]);
        assert!(!r.normalizer_preserves);
        assert_eq!(r.generalized_hexagon, vec![false; 3]);
        assert_eq!(r.strongly_regular, vec![false; 3]);
        assert_eq!(r.automorphism_orders, vec![63; 3]);
    }
}
