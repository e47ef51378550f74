use super::incidence::{is_generalized_hexagon, regular_embedding_checks, IncidenceGeometry};
use crate::designs::{classify_deza, DezaParams};
use crate::enumerate::SubspaceEnumeration;
use crate::error::{Error, Result};
use crate::graph::QaryGraph;
use crate::space::{Ambient, Subspace};

/// Q(x) = x0x4 + x1x5 + x2x6 + x3^2 over F_2.
fn on_quadric(a: Ambient, x: u64) -> bool {
    let c = |i| a.coord(x, i);
    (c(0) * c(4) + c(1) * c(5) + c(2) * c(6) + c(3)) % 2 == 0
}

/// Grassmann coordinate p_ij of the line <x, y>.
fn plucker(a: Ambient, x: u64, y: u64, i: usize, j: usize) -> u8 {
    (a.coord(x, i) * a.coord(y, j) + a.coord(x, j) * a.coord(y, i)) % 2
}

/// p12 = p34, p45 = p23, p02 = p35, p56 = p03, p01 = p36, p46 = p13.
const HEXAGON_CONDITIONS: [(usize, usize, usize, usize); 6] =
    [(1, 2, 3, 4), (4, 5, 2, 3), (0, 2, 3, 5), (5, 6, 0, 3), (0, 1, 3, 6), (4, 6, 1, 3)];

/// Lines of H(2) on the parabolic quadric of PG(6, 2), projected from the
/// nucleus e3 onto PG(5, 2) by deleting coordinate 3.
fn hexagon_lines() -> Result<Vec<Subspace>> {
    let a7 = Ambient::new(7, 2)?;
    let a6 = Ambient::new(6, 2)?;
    let project = |x: u64| -> u64 {
        let keep = [0, 1, 2, 4, 5, 6];
        keep.iter().enumerate().fold(0, |acc, (j, &i)| a6.with_coord(acc, j, a7.coord(x, i)))
    };
    let mut out = Vec::new();
    for l in SubspaceEnumeration::new(a7, 2)?.iter() {
        if !l.point_words().iter().all(|&p| on_quadric(a7, p)) {
            continue;
        }
        let (x, y) = (l.basis()[0], l.basis()[1]);
        if HEXAGON_CONDITIONS.iter().all(|&(i, j, k, m)| plucker(a7, x, y, i, j) == plucker(a7, x, y, k, m)) {
            let img = Subspace::span_words(a6, [project(x), project(y)]);
            if img.dim() != 2 {
                return Err(Error::SelfCheck(format!("projection collapses {l:?}")));
            }
            out.push(img);
        }
    }
    Ok(out)
}

/// The split Cayley hexagon H(2) in PG(5, 2), accepted only if it passes the
/// regularity, Deza, generalized-hexagon and regular-embedding checks.
pub fn build_split_cayley_hexagon() -> Result<QaryGraph> {
    let a6 = Ambient::new(6, 2)?;
    let g = QaryGraph::new(a6, hexagon_lines()?)?;
    if g.edge_count() != 63 {
        return Err(Error::SelfCheck(format!("expected 63 lines, built {}", g.edge_count())));
    }
    let reg = g.regularity();
    if reg.k != Some(2) {
        return Err(Error::SelfCheck(format!("not 2-regular: {reg:?}")));
    }
    let deza = classify_deza(&g)?;
    if deza.params != DezaParams::new(6, 2, 1, 0, 2) {
        return Err(Error::SelfCheck(format!("Deza parameters {:?}", deza.params)));
    }
    if !is_generalized_hexagon(&IncidenceGeometry::from_graph(&g)) {
        return Err(Error::SelfCheck("incidence graph is not a generalized hexagon".into()));
    }
    let emb = regular_embedding_checks(&g);
    if !emb.holds {
        return Err(Error::SelfCheck(format!("regular embedding fails at {:?}", emb.failures)));
    }
    Ok(g)
}
