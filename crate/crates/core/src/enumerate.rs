//! Counting and enumerating subspaces of F_q^v.
//!
//! The enumeration order is part of the public contract: k-subspaces are
//! emitted in increasing order of their reduced echelon basis, compared row by
//! row (rows listed by increasing pivot column, each row compared as a
//! coordinate string). A [`SubspaceId`] is the position in that order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{Ambient, Subspace};

/// Default ceiling on materialised enumerations.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 4_000_000;

/// Index of a subspace within the canonical enumeration of its `(v, k, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SubspaceId(pub u64);

/// `[i]_q = (q^i - 1)/(q - 1)`, the number of 1-subspaces of F_q^i.
pub fn gaussian_bracket(i: u32, q: u64) -> Result<u64> {
    if q < 2 {
        return Err(Error::InvalidParameters(format!("field order {q}")));
    }
    let mut acc: u64 = 0;
    for _ in 0..i {
        acc = acc
            .checked_mul(q)
            .and_then(|x| x.checked_add(1))
            .ok_or(Error::Overflow("gaussian bracket"))?;
    }
    Ok(acc)
}

/// Number of k-subspaces of F_q^v.
pub fn gaussian_binomial(v: u32, k: u32, q: u64) -> Result<u64> {
    if k > v {
        return Err(Error::InvalidParameters(format!("k = {k} > v = {v}")));
    }
    if q < 2 {
        return Err(Error::InvalidParameters(format!("field order {q}")));
    }
    let pow = |e: u32| -> Result<u128> {
        (q as u128).checked_pow(e).ok_or(Error::Overflow("gaussian binomial"))
    };
    // after step i the accumulator equals the binomial [v choose i+1]_q
    let mut acc: u128 = 1;
    for i in 0..k {
        let num = pow(v - i)? - 1;
        let den = pow(i + 1)? - 1;
        acc = acc.checked_mul(num).ok_or(Error::Overflow("gaussian binomial"))? / den;
    }
    u64::try_from(acc).map_err(|_| Error::Overflow("gaussian binomial"))
}

/// Materialised canonical enumeration of all k-subspaces of an ambient space.
#[derive(Clone, Debug)]
pub struct SubspaceEnumeration {
    ambient: Ambient,
    k: usize,
    items: Vec<Subspace>,
}

impl SubspaceEnumeration {
    pub fn new(ambient: Ambient, k: usize) -> Result<SubspaceEnumeration> {
        Self::with_budget(ambient, k, DEFAULT_ENUMERATION_BUDGET)
    }

    pub fn with_budget(ambient: Ambient, k: usize, budget: u64) -> Result<SubspaceEnumeration> {
        let v = ambient.v();
        if k > v {
            return Err(Error::InvalidParameters(format!("k = {k} > v = {v}")));
        }
        let count = gaussian_binomial(v as u32, k as u32, ambient.q() as u64)?;
        if count > budget {
            return Err(Error::BudgetExceeded { count, budget });
        }
        let mut items = Vec::with_capacity(count as usize);
        let q = ambient.q() as u64;
        let mut pivots: Vec<usize> = (0..k).collect();
        loop {
            // free entries: row i, columns after its pivot that are not pivots
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|i| {
                    let p = &pivots;
                    (p[i] + 1..v).filter(move |c| !p.contains(c)).map(move |c| (i, c))
                })
                .collect();
            let total = q.pow(free.len() as u32);
            for mut idx in 0..total {
                let mut rows: Vec<u64> = pivots.iter().map(|&c| ambient.unit(c)).collect();
                for &(i, c) in free.iter().rev() {
                    let val = (idx % q) as u8;
                    idx /= q;
                    rows[i] = ambient.with_coord(rows[i], c, val);
                }
                items.push(Subspace::from_canonical_rows(ambient, rows));
            }
            if !next_combination(&mut pivots, v) {
                break;
            }
        }
        items.sort_unstable();
        debug_assert_eq!(items.len() as u64, count);
        Ok(SubspaceEnumeration { ambient, k, items })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn get(&self, id: SubspaceId) -> Option<&Subspace> {
        self.items.get(id.0 as usize)
    }

    /// Locates a subspace by binary search in the canonical order.
    pub fn rank(&self, s: &Subspace) -> Option<SubspaceId> {
        self.items.binary_search(s).ok().map(|i| SubspaceId(i as u64))
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subspace> {
        self.items.iter()
    }

    /// Restart the stream at an arbitrary id.
    pub fn iter_from(&self, start: SubspaceId) -> impl Iterator<Item = (SubspaceId, &Subspace)> {
        self.items
            .iter()
            .enumerate()
            .skip(start.0 as usize)
            .map(|(i, s)| (SubspaceId(i as u64), s))
    }

    pub fn into_vec(self) -> Vec<Subspace> {
        self.items
    }
}

/// Emits every k-subspace of F_q^v in canonical order.
pub fn enumerate_subspaces(v: usize, k: usize, q: u32) -> Result<Vec<Subspace>> {
    let ambient = Ambient::new(v, q)?;
    Ok(SubspaceEnumeration::new(ambient, k)?.into_vec())
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// The 1-subspaces of an ambient space, indexed by their [`SubspaceId`].
///
/// Points are stored as normalised vectors (first nonzero coordinate 1); the
/// id of a point is its position in increasing word order, which coincides
/// with the canonical enumeration order of 1-subspaces.
#[derive(Clone, Debug)]
pub struct PointTable {
    ambient: Ambient,
    points: Vec<u64>,
}

impl PointTable {
    pub fn new(ambient: Ambient) -> PointTable {
        let mut points: Vec<u64> = ambient
            .vectors()
            .filter(|&x| x != 0 && ambient.normalize(x) == x)
            .collect();
        points.sort_unstable();
        PointTable { ambient, points }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Normalised vector of point `i`.
    #[inline]
    pub fn vector(&self, i: usize) -> u64 {
        self.points[i]
    }

    pub fn vectors(&self) -> &[u64] {
        &self.points
    }

    /// Point index of a nonzero vector (any scalar multiple).
    #[inline]
    pub fn index_of(&self, x: u64) -> Option<usize> {
        if x == 0 {
            return None;
        }
        if self.ambient.q() == 2 {
            return Some(x as usize - 1);
        }
        self.points.binary_search(&self.ambient.normalize(x)).ok()
    }

    pub fn subspace(&self, i: usize) -> Subspace {
        Subspace::from_canonical_rows(self.ambient, vec![self.points[i]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Brute-force count of k-subspaces: collect the distinct spans of all
    /// k-tuples of vectors, using a vector-set representation.
    fn brute_force_count(v: usize, k: usize, q: u32) -> usize {
        let amb = Ambient::new(v, q).unwrap();
        let vecs: Vec<u64> = amb.vectors().collect();
        let mut seen: BTreeSet<BTreeSet<u64>> = BTreeSet::new();
        fn rec(
            amb: Ambient,
            vecs: &[u64],
            start: usize,
            chosen: &mut Vec<u64>,
            k: usize,
            seen: &mut BTreeSet<BTreeSet<u64>>,
        ) {
            if chosen.len() == k {
                // all linear combinations
                let mut set = BTreeSet::new();
                set.insert(0u64);
                for &g in chosen.iter() {
                    let cur: Vec<u64> = set.iter().copied().collect();
                    for x in cur {
                        for c in 1..amb.q() as u8 {
                            set.insert(amb.add(x, amb.scale(c, g)));
                        }
                    }
                }
                if set.len() == (amb.q() as usize).pow(k as u32) {
                    seen.insert(set);
                }
                return;
            }
            for i in start..vecs.len() {
                chosen.push(vecs[i]);
                rec(amb, vecs, i + 1, chosen, k, seen);
                chosen.pop();
            }
        }
        rec(amb, &vecs, 1, &mut Vec::new(), k, &mut seen);
        seen.len()
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(gaussian_bracket(1, 2).unwrap(), 1);
        assert_eq!(gaussian_bracket(1, 5).unwrap(), 1);
        assert_eq!(gaussian_bracket(6, 2).unwrap(), 63);
        assert_eq!(gaussian_bracket(2, 2).unwrap(), 3);
        assert_eq!(gaussian_bracket(0, 3).unwrap(), 0);
    }

    #[test]
    fn bracket_overflow_is_reported() {
        assert_eq!(gaussian_bracket(64, 2), Ok(u64::MAX));
        assert_eq!(gaussian_bracket(65, 2), Err(Error::Overflow("gaussian bracket")));
        assert!(gaussian_binomial(200, 100, 2).is_err());
    }

    #[test]
    fn binomial_matches_brute_force() {
        // frozen from the brute-force oracle below
        assert_eq!(brute_force_count(6, 2, 2), 651);
        assert_eq!(brute_force_count(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(6, 2, 2).unwrap(), 651);
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), 35);
        assert_eq!(651, 10 * 63 + 21);
        for v in 1..=4usize {
            assert_eq!(gaussian_binomial(v as u32, 0, 3).unwrap(), 1);
            for k in 0..=v.min(2) {
                assert_eq!(
                    gaussian_binomial(v as u32, k as u32, 3).unwrap() as usize,
                    brute_force_count(v, k, 3),
                    "v={v} k={k}"
                );
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_subspaces(6, 1, 2).unwrap().len(), 63);
        assert_eq!(enumerate_subspaces(6, 2, 2).unwrap().len(), 651);
        for q in [2u32, 3] {
            for v in 1..=6usize {
                for k in 0..=2.min(v) {
                    let n = enumerate_subspaces(v, k, q).unwrap().len() as u64;
                    assert_eq!(n, gaussian_binomial(v as u32, k as u32, q as u64).unwrap());
                }
            }
        }
    }

    #[test]
    fn full_space_is_the_only_v_subspace() {
        let all = enumerate_subspaces(4, 4, 3).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0], Subspace::full(Ambient::new(4, 3).unwrap()));
    }

    #[test]
    fn rank_round_trip() {
        let amb = Ambient::new(5, 3).unwrap();
        let e = SubspaceEnumeration::new(amb, 2).unwrap();
        for (i, s) in e.iter().enumerate() {
            assert_eq!(e.rank(s), Some(SubspaceId(i as u64)));
        }
        let (id, _) = e.iter_from(SubspaceId(17)).next().unwrap();
        assert_eq!(id, SubspaceId(17));
    }

    #[test]
    fn budget_refusal() {
        let amb = Ambient::new(12, 2).unwrap();
        assert!(matches!(
            SubspaceEnumeration::with_budget(amb, 3, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn point_ids_match_enumeration() {
        for q in [2u32, 3, 4] {
            let amb = Ambient::new(3, q).unwrap();
            let table = PointTable::new(amb);
            let e = SubspaceEnumeration::new(amb, 1).unwrap();
            assert_eq!(table.len(), e.len());
            for i in 0..table.len() {
                assert_eq!(&table.subspace(i), e.get(SubspaceId(i as u64)).unwrap());
                let x = table.vector(i);
                for c in 1..q as u8 {
                    assert_eq!(table.index_of(amb.scale(c, x)), Some(i));
                }
            }
        }
    }
}
