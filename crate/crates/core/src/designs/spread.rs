use std::collections::HashMap;

use serde::Serialize;

use crate::enumerate::gaussian_bracket;
use crate::error::{Error, Result};
use crate::field::irreducible_over;
use crate::space::{Ambient, Subspace};

/// A set of n-subspaces intended to partition the nonzero vectors of F_q^v.
///
/// [`Spread::new`] only checks shapes; use [`validate_spread`] or
/// [`Spread::validated`] for the partition property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spread {
    #[serde(skip)]
    ambient: Ambient,
    n: usize,
    elements: Vec<Subspace>,
}

impl Spread {
    pub fn new(ambient: Ambient, n: usize, elements: Vec<Subspace>) -> Result<Spread> {
        for e in &elements {
            if e.ambient() != ambient {
                return Err(Error::AmbientMismatch(format!("{ambient:?}"), format!("{:?}", e.ambient())));
            }
            if e.dim() != n {
                return Err(Error::WrongDimension { expected: n, got: e.dim() });
            }
        }
        Ok(Spread { ambient, n, elements })
    }

    /// Like [`Spread::new`] but also requires a valid partition.
    pub fn validated(ambient: Ambient, n: usize, elements: Vec<Subspace>) -> Result<Spread> {
        let s = Spread::new(ambient, n, elements)?;
        if !validate_spread(&s) {
            return Err(Error::InvalidSpread(format!("{} elements of dimension {n} do not partition {ambient:?}", s.elements.len())));
        }
        Ok(s)
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[Subspace] {
        &self.elements
    }

    /// Index of the element containing each normalised point word.
    pub fn element_map(&self) -> HashMap<u64, usize> {
        let mut map = HashMap::new();
        for (i, e) in self.elements.iter().enumerate() {
            for p in e.point_words() {
                map.insert(p, i);
            }
        }
        map
    }
}

/// Marks every nonzero vector; true iff each is covered exactly once and the
/// element count is (q^v - 1)/(q^n - 1).
pub fn validate_spread(s: &Spread) -> bool {
    let amb = s.ambient;
    let v = amb.v() as u32;
    let q = amb.q() as u64;
    if s.n == 0 || v % s.n as u32 != 0 {
        return false;
    }
    let expected = match (gaussian_bracket(v, q), gaussian_bracket(s.n as u32, q)) {
        (Ok(a), Ok(b)) => a / b,
        _ => return false,
    };
    if s.elements.len() as u64 != expected {
        return false;
    }
    let mut seen: HashMap<u64, ()> = HashMap::new();
    for e in &s.elements {
        if e.dim() != s.n {
            return false;
        }
        for x in e.vectors() {
            if x != 0 && seen.insert(x, ()).is_some() {
                return false;
            }
        }
    }
    seen.len() as u64 + 1 == q.pow(v)
}

/// Right multiplication of the `n`-blocks of `x` by an n×n matrix.
fn apply_blockwise(amb: Ambient, x: u64, n: usize, m: &[Vec<u8>]) -> u64 {
    let f = amb.field();
    let mut out = 0;
    for b in 0..amb.v() / n {
        for j in 0..n {
            let mut acc = 0u8;
            for i in 0..n {
                acc = f.add(acc, f.mul(amb.coord(x, b * n + i), m[i][j]));
            }
            out = amb.with_coord(out, b * n + j, acc);
        }
    }
    out
}

/// Companion matrix of a monic polynomial (coefficients constant term first),
/// acting on row vectors: e_i C = e_{i+1}, e_{n-1} C = -(c_0, ..., c_{n-1}).
pub(crate) fn companion(amb: Ambient, poly: &[u8]) -> Vec<Vec<u8>> {
    let f = amb.field();
    let n = poly.len() - 1;
    let mut m = vec![vec![0u8; n]; n];
    for (i, row) in m.iter_mut().enumerate().take(n - 1) {
        row[i + 1] = 1;
    }
    for j in 0..n {
        m[n - 1][j] = f.neg(poly[j]);
    }
    m
}

/// The Desarguesian spread: F_q^v viewed as F_{q^n}^{v/n}, one element per
/// F_{q^n}-line. F_{q^n} is realised as F_q[C] for the companion matrix C of
/// the first irreducible polynomial of degree n.
pub fn field_reduction_spread(v: usize, n: usize, q: u32) -> Result<Spread> {
    let amb = Ambient::new(v, q)?;
    if n == 0 || v % n != 0 {
        return Err(Error::InvalidParameters(format!("spread element dimension {n} does not divide {v}")));
    }
    let c = companion(amb, &irreducible_over(amb.field(), n));
    let mut covered: HashMap<u64, ()> = HashMap::new();
    let mut elements = Vec::new();
    for x in amb.vectors().skip(1) {
        if covered.contains_key(&x) {
            continue;
        }
        let mut gens = vec![x];
        for _ in 1..n {
            gens.push(apply_blockwise(amb, *gens.last().unwrap(), n, &c));
        }
        let e = Subspace::span_words(amb, gens);
        for y in e.vectors() {
            covered.insert(y, ());
        }
        elements.push(e);
    }
    elements.sort();
    Spread::validated(amb, n, elements)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_reduction_sizes() {
        let s = field_reduction_spread(4, 2, 2).unwrap();
        assert_eq!(s.elements().len(), 5);
        assert!(validate_spread(&s));
        assert_eq!(field_reduction_spread(6, 3, 2).unwrap().elements().len(), 9);
        assert_eq!(field_reduction_spread(6, 2, 2).unwrap().elements().len(), 21);
        assert_eq!(field_reduction_spread(4, 2, 3).unwrap().elements().len(), 10);
        assert_eq!(field_reduction_spread(12, 6, 2).unwrap().elements().len(), 65);
        let whole = field_reduction_spread(5, 5, 2).unwrap();
        assert_eq!(whole.elements(), &[Subspace::full(whole.ambient())]);
        assert!(field_reduction_spread(6, 4, 2).is_err());
    }

    #[test]
    fn overlapping_elements_are_rejected() {
        let a = Ambient::new(4, 2).unwrap();
        let l = |x: &str, y: &str| Subspace::span_words(a, [a.parse(x).unwrap(), a.parse(y).unwrap()]);
        let mut els = field_reduction_spread(4, 2, 2).unwrap().elements().to_vec();
        els[0] = l("1000", "0100");
        els[1] = l("1000", "0010");
        let s = Spread::new(a, 2, els).unwrap();
        assert!(!validate_spread(&s));
    }

    #[test]
    fn replaced_element_breaks_3_spread() {
        let s = field_reduction_spread(6, 3, 2).unwrap();
        let a = s.ambient();
        let mut els = s.elements().to_vec();
        let p = els[1].basis()[0];
        els[0] = Subspace::span_words(a, [p, a.unit(0) ^ p, a.unit(5)]);
        if els[0].dim() == 3 {
            assert!(!validate_spread(&Spread::new(a, 3, els).unwrap()));
        }
        let short = Spread::new(a, 3, s.elements()[1..].to_vec()).unwrap();
        assert!(!validate_spread(&short));
    }
}
