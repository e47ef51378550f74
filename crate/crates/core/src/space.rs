//! Vectors and subspaces of F_q^v.
//!
//! A vector is packed into a `u64`: coordinate `i` occupies the bit field at
//! shift `(v - 1 - i) * b`, where `b` is the number of bits per field element
//! (1 for q = 2). Coordinate 0 is therefore the most significant field, and
//! integer order on words coincides with lexicographic order on coordinate
//! strings. For q = 2 all vector arithmetic is plain XOR.
//!
//! A [`Subspace`] stores its reduced row-echelon basis, rows ordered by
//! increasing pivot column. Two subspaces are equal as sets iff their bases
//! are identical.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::Field;

/// The ambient space F_q^v.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ambient {
    v: u8,
    q: u8,
    bits: u8,
}

impl fmt::Debug for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.q, self.v)
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v={} q={}", self.v, self.q)
    }
}

impl Ambient {
    pub fn new(v: usize, q: u32) -> Result<Ambient> {
        Field::get(q)?;
        let bits = 32 - (q - 1).leading_zeros();
        if v * bits as usize > 64 || v == 0 {
            return Err(Error::DimensionTooLarge { v, q });
        }
        Ok(Ambient { v: v as u8, q: q as u8, bits: bits as u8 })
    }

    #[inline]
    pub fn v(&self) -> usize {
        self.v as usize
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q as u32
    }

    #[inline]
    pub fn field(&self) -> &'static Field {
        Field::get(self.q as u32).expect("ambient fields are validated at construction")
    }

    #[inline]
    fn shift(&self, i: usize) -> u32 {
        ((self.v as usize - 1 - i) * self.bits as usize) as u32
    }

    #[inline]
    fn coord_mask(&self) -> u64 {
        (1u64 << self.bits) - 1
    }

    /// Number of vectors, q^v.
    pub fn vector_count(&self) -> u64 {
        (self.q as u64).pow(self.v as u32)
    }

    #[inline]
    pub fn coord(&self, x: u64, i: usize) -> u8 {
        ((x >> self.shift(i)) & self.coord_mask()) as u8
    }

    #[inline]
    pub fn with_coord(&self, x: u64, i: usize, c: u8) -> u64 {
        let s = self.shift(i);
        (x & !(self.coord_mask() << s)) | ((c as u64) << s)
    }

    /// The standard basis vector e_i.
    #[inline]
    pub fn unit(&self, i: usize) -> u64 {
        1u64 << self.shift(i)
    }

    pub fn coords(&self, x: u64) -> Vec<u8> {
        (0..self.v()).map(|i| self.coord(x, i)).collect()
    }

    pub fn pack(&self, coords: &[u8]) -> Result<u64> {
        if coords.len() != self.v() {
            return Err(Error::InvalidVector(format!(
                "expected {} coordinates, got {}",
                self.v,
                coords.len()
            )));
        }
        let mut x = 0;
        for (i, &c) in coords.iter().enumerate() {
            if c as u32 >= self.q() {
                return Err(Error::InvalidVector(format!("coordinate {c} outside F_{}", self.q)));
            }
            x = self.with_coord(x, i, c);
        }
        Ok(x)
    }

    /// Checks that a word is a valid packed vector of this ambient.
    pub fn is_valid(&self, x: u64) -> bool {
        let used = self.v as u32 * self.bits as u32;
        if used < 64 && x >> used != 0 {
            return false;
        }
        self.q == 2 || (0..self.v()).all(|i| (self.coord(x, i) as u32) < self.q())
    }

    /// Vector with base-q digits of `index` as coordinates (coordinate 0 most significant).
    pub fn vector_from_index(&self, mut index: u64) -> u64 {
        if self.q == 2 {
            return index;
        }
        let q = self.q as u64;
        let mut x = 0;
        for i in (0..self.v()).rev() {
            x = self.with_coord(x, i, (index % q) as u8);
            index /= q;
        }
        x
    }

    /// All q^v vectors in increasing word order.
    pub fn vectors(self) -> impl Iterator<Item = u64> {
        (0..self.vector_count()).map(move |i| self.vector_from_index(i))
    }

    #[inline]
    pub fn add(&self, x: u64, y: u64) -> u64 {
        if self.q == 2 {
            return x ^ y;
        }
        let f = self.field();
        let mut r = 0;
        for i in 0..self.v() {
            r = self.with_coord(r, i, f.add(self.coord(x, i), self.coord(y, i)));
        }
        r
    }

    #[inline]
    pub fn sub(&self, x: u64, y: u64) -> u64 {
        if self.q == 2 {
            return x ^ y;
        }
        self.add(x, self.scale(self.field().neg(1), y))
    }

    #[inline]
    pub fn scale(&self, c: u8, x: u64) -> u64 {
        if self.q == 2 {
            return if c == 0 { 0 } else { x };
        }
        let f = self.field();
        let mut r = 0;
        for i in 0..self.v() {
            r = self.with_coord(r, i, f.mul(c, self.coord(x, i)));
        }
        r
    }

    /// `x + c*y`.
    #[inline]
    pub fn axpy(&self, x: u64, c: u8, y: u64) -> u64 {
        if c == 0 {
            x
        } else {
            self.add(x, self.scale(c, y))
        }
    }

    /// Standard dot product.
    pub fn dot(&self, x: u64, y: u64) -> u8 {
        if self.q == 2 {
            return ((x & y).count_ones() & 1) as u8;
        }
        let f = self.field();
        (0..self.v()).fold(0, |acc, i| f.add(acc, f.mul(self.coord(x, i), self.coord(y, i))))
    }

    /// Column and value of the first nonzero coordinate.
    #[inline]
    pub fn leading(&self, x: u64) -> Option<(usize, u8)> {
        if x == 0 {
            return None;
        }
        let top = 63 - x.leading_zeros() as usize;
        let col = self.v() - 1 - top / self.bits as usize;
        Some((col, self.coord(x, col)))
    }

    /// Scalar multiple of `x` whose first nonzero coordinate is 1.
    #[inline]
    pub fn normalize(&self, x: u64) -> u64 {
        match self.leading(x) {
            None => 0,
            Some((_, 1)) => x,
            Some((_, c)) => self.scale(self.field().inv(c), x),
        }
    }

    /// Writes a vector as a digit string, one digit per coordinate.
    pub fn format(&self, x: u64) -> String {
        (0..self.v())
            .map(|i| char::from_digit(self.coord(x, i) as u32, 36).unwrap())
            .collect()
    }

    /// Parses a digit string written by [`Ambient::format`].
    pub fn parse(&self, s: &str) -> Result<u64> {
        let digits: Option<Vec<u8>> =
            s.trim().chars().map(|c| c.to_digit(36).map(|d| d as u8)).collect();
        let digits = digits.ok_or_else(|| Error::InvalidVector(s.to_string()))?;
        self.pack(&digits)
    }

    pub fn vector(&self, word: u64) -> Result<Vector> {
        if !self.is_valid(word) {
            return Err(Error::InvalidVector(format!("{word:#x} for {self:?}")));
        }
        Ok(Vector { ambient: *self, word })
    }
}

/// A vector of F_q^v together with its ambient.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector {
    ambient: Ambient,
    word: u64,
}

impl Vector {
    pub fn from_coords(ambient: Ambient, coords: &[u8]) -> Result<Vector> {
        Ok(Vector { ambient, word: ambient.pack(coords)? })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn word(&self) -> u64 {
        self.word
    }

    pub fn coords(&self) -> Vec<u8> {
        self.ambient.coords(self.word)
    }

    pub fn is_zero(&self) -> bool {
        self.word == 0
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.ambient.format(self.word))
    }
}

/// Reduces `rows` in place to reduced row-echelon form, dropping zero rows.
/// The result is sorted by increasing pivot column.
pub(crate) fn rref(amb: Ambient, rows: &mut Vec<u64>) {
    if amb.q == 2 {
        rref_gf2(rows);
        return;
    }
    let f = amb.field();
    let mut out: Vec<u64> = Vec::with_capacity(rows.len());
    let mut pivots: Vec<usize> = Vec::with_capacity(rows.len());
    for &r in rows.iter() {
        // reduce against existing basis
        let mut x = r;
        for (b, &p) in out.iter().zip(&pivots) {
            let c = amb.coord(x, p);
            if c != 0 {
                x = amb.axpy(x, f.neg(c), *b);
            }
        }
        let Some((p, c)) = amb.leading(x) else { continue };
        x = amb.scale(f.inv(c), x);
        for b in out.iter_mut() {
            let d = amb.coord(*b, p);
            if d != 0 {
                *b = amb.axpy(*b, f.neg(d), x);
            }
        }
        out.push(x);
        pivots.push(p);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    *rows = out;
}

fn rref_gf2(rows: &mut Vec<u64>) {
    let mut out: Vec<u64> = Vec::with_capacity(rows.len());
    for &r in rows.iter() {
        let mut x = r;
        for &b in &out {
            let top = 1u64 << (63 - b.leading_zeros());
            if x & top != 0 {
                x ^= b;
            }
        }
        if x == 0 {
            continue;
        }
        let top = 1u64 << (63 - x.leading_zeros());
        for b in out.iter_mut() {
            if *b & top != 0 {
                *b ^= x;
            }
        }
        out.push(x);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    *rows = out;
}

/// A subspace of F_q^v in canonical (reduced row-echelon) form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: Ambient,
    rows: Vec<u64>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|&r| self.ambient.format(r)).collect();
        write!(f, "<{}>", rows.join(","))
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<String> = self.rows.iter().map(|&r| self.ambient.format(r)).collect();
        rows.serialize(s)
    }
}

impl Subspace {
    /// Span of packed row words; the words must be valid for `ambient`.
    pub fn span_words(ambient: Ambient, words: impl IntoIterator<Item = u64>) -> Subspace {
        let mut rows: Vec<u64> = words.into_iter().collect();
        rref(ambient, &mut rows);
        Subspace { ambient, rows }
    }

    /// Trusts that `rows` is already canonical.
    pub(crate) fn from_canonical_rows(ambient: Ambient, rows: Vec<u64>) -> Subspace {
        debug_assert_eq!(Subspace::span_words(ambient, rows.clone()).rows, rows);
        Subspace { ambient, rows }
    }

    pub fn zero(ambient: Ambient) -> Subspace {
        Subspace { ambient, rows: Vec::new() }
    }

    pub fn full(ambient: Ambient) -> Subspace {
        Subspace { ambient, rows: (0..ambient.v()).map(|i| ambient.unit(i)).collect() }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Canonical basis rows (reduced echelon form, increasing pivots).
    pub fn basis(&self) -> &[u64] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|&r| self.ambient.leading(r).unwrap().0).collect()
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(
                format!("{:?}", self.ambient),
                format!("{:?}", other.ambient),
            ));
        }
        Ok(())
    }

    /// Membership test for a packed vector.
    pub fn contains_word(&self, x: u64) -> bool {
        let amb = self.ambient;
        if amb.q == 2 {
            let mut x = x;
            for &b in &self.rows {
                let top = 1u64 << (63 - b.leading_zeros());
                if x & top != 0 {
                    x ^= b;
                }
            }
            return x == 0;
        }
        let f = amb.field();
        let mut x = x;
        for &b in &self.rows {
            let (p, _) = amb.leading(b).unwrap();
            let c = amb.coord(x, p);
            if c != 0 {
                x = amb.axpy(x, f.neg(c), b);
            }
        }
        x == 0
    }

    pub fn contains_vector(&self, x: &Vector) -> Result<bool> {
        if x.ambient != self.ambient {
            return Err(Error::AmbientMismatch(
                format!("{:?}", self.ambient),
                format!("{:?}", x.ambient),
            ));
        }
        Ok(self.contains_word(x.word))
    }

    /// `inner ⊆ self`.
    pub fn contains(&self, inner: &Subspace) -> Result<bool> {
        self.check(inner)?;
        Ok(inner.rows.len() <= self.rows.len() && inner.rows.iter().all(|&r| self.contains_word(r)))
    }

    /// The sum `self + other`.
    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Ok(Subspace::span_words(self.ambient, self.rows.iter().chain(&other.rows).copied()))
    }

    /// Orthogonal complement with respect to the standard dot product.
    pub fn perp(&self) -> Subspace {
        let amb = self.ambient;
        let f = amb.field();
        let pivots = self.pivots();
        let mut out = Vec::with_capacity(amb.v() - self.dim());
        for j in (0..amb.v()).filter(|j| !pivots.contains(j)) {
            // x_j = 1, x_{p_i} = -R[i][j], others 0
            let mut x = amb.unit(j);
            for (r, &p) in self.rows.iter().zip(&pivots) {
                let c = amb.coord(*r, j);
                if c != 0 {
                    x = amb.with_coord(x, p, f.neg(c));
                }
            }
            out.push(x);
        }
        Subspace::span_words(amb, out)
    }

    /// Intersection, computed as `(a⊥ + b⊥)⊥`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Ok(self.perp().join(&other.perp())?.perp())
    }

    /// Image of the basis under a map on words, re-canonicalised.
    pub fn map_words(&self, f: impl Fn(u64) -> u64) -> Subspace {
        Subspace::span_words(self.ambient, self.rows.iter().map(|&r| f(r)))
    }

    /// All q^dim vectors of the subspace.
    pub fn vectors(&self) -> Vec<u64> {
        let amb = self.ambient;
        let mut out = vec![0u64];
        for &b in &self.rows {
            let cur = out.clone();
            for c in 1..amb.q() as u8 {
                let sb = amb.scale(c, b);
                out.extend(cur.iter().map(|&x| amb.add(x, sb)));
            }
        }
        out
    }

    /// Normalised nonzero vectors, one per 1-subspace, sorted.
    pub fn point_words(&self) -> Vec<u64> {
        let amb = self.ambient;
        let mut pts: Vec<u64> =
            self.vectors().into_iter().filter(|&x| x != 0 && amb.normalize(x) == x).collect();
        pts.sort_unstable();
        pts
    }
}

/// Canonical span of a list of vectors.
pub fn span(ambient: Ambient, vectors: &[Vector]) -> Result<Subspace> {
    if let Some(v) = vectors.iter().find(|v| v.ambient != ambient) {
        return Err(Error::AmbientMismatch(format!("{ambient:?}"), format!("{:?}", v.ambient)));
    }
    Ok(Subspace::span_words(ambient, vectors.iter().map(|v| v.word)))
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

pub fn contains(outer: &Subspace, inner: &Subspace) -> Result<bool> {
    outer.contains(inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn amb(v: usize, q: u32) -> Ambient {
        Ambient::new(v, q).unwrap()
    }

    fn vec_of(a: Ambient, s: &str) -> Vector {
        a.vector(a.parse(s).unwrap()).unwrap()
    }

    #[test]
    fn span_of_nothing_is_zero() {
        let a = amb(4, 2);
        let s = span(a, &[]).unwrap();
        assert_eq!(s.dim(), 0);
        assert_eq!(s, Subspace::zero(a));
    }

    #[test]
    fn span_row_reduces() {
        let a = amb(4, 2);
        let s = span(a, &[vec_of(a, "1000"), vec_of(a, "1100")]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.basis(), &[a.parse("1000").unwrap(), a.parse("0100").unwrap()]);
    }

    #[test]
    fn span_mixed_ambient_fails() {
        let a = amb(4, 2);
        let b = amb(5, 2);
        assert!(span(a, &[vec_of(a, "1000"), vec_of(b, "10000")]).is_err());
    }

    #[test]
    fn singer_first_representative_is_a_line() {
        let a = amb(6, 2);
        let s = span(a, &[vec_of(a, "100000"), vec_of(a, "011000")]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.vectors().iter().filter(|&&x| x != 0).count(), 3);
        assert!(s.contains_word(a.parse("111000").unwrap()));
    }

    #[test]
    fn intersect_examples() {
        let a = amb(6, 2);
        let s = span(a, &[vec_of(a, "110010"), vec_of(a, "001011")]).unwrap();
        assert_eq!(s.intersect(&s).unwrap(), s);
        let l1 = span(a, &[vec_of(a, "100000"), vec_of(a, "010000")]).unwrap();
        let l2 = span(a, &[vec_of(a, "100000"), vec_of(a, "001000")]).unwrap();
        assert_eq!(l1.intersect(&l2).unwrap(), span(a, &[vec_of(a, "100000")]).unwrap());
        // two hyperplanes x0 = 0 and x1 = 0
        let h1 = span(a, &[vec_of(a, "100000")]).unwrap().perp();
        let h2 = span(a, &[vec_of(a, "010000")]).unwrap().perp();
        let m = h1.intersect(&h2).unwrap();
        assert_eq!(m.dim(), 4);
        // sweep: the common vectors are exactly those with x0 = x1 = 0
        let swept = a.vectors().filter(|&x| h1.contains_word(x) && h2.contains_word(x)).count();
        assert_eq!(swept, 16);
        assert_eq!(m.vectors().len(), 16);
    }

    #[test]
    fn containment_examples() {
        let a = amb(6, 2);
        let s = Subspace::span_words(a, [a.parse("101010").unwrap()]);
        assert!(s.contains(&Subspace::zero(a)).unwrap());
        assert!(s.contains_word(0));
        let h = Subspace::span_words(a, [a.unit(0)]).perp();
        assert_eq!(h.dim(), 5);
        assert!(!h.contains_word(a.unit(0)));
        assert!(s.contains(&Subspace::zero(amb(5, 2))).is_err());
    }

    #[test]
    fn gf3_perp_is_orthogonal() {
        let a = amb(4, 3);
        let s = Subspace::span_words(a, [a.parse("1201").unwrap(), a.parse("0112").unwrap()]);
        let p = s.perp();
        assert_eq!(p.dim(), 2);
        for &x in s.basis() {
            for &y in p.basis() {
                assert_eq!(a.dot(x, y), 0);
            }
        }
    }

    fn arb_rows(v: usize, q: u32, max_rows: usize) -> impl Strategy<Value = Vec<u64>> {
        let a = amb(v, q);
        prop::collection::vec(0..a.vector_count(), 0..=max_rows)
            .prop_map(move |idx| idx.into_iter().map(|i| a.vector_from_index(i)).collect())
    }

    proptest! {
        #[test]
        fn canonical_form_is_idempotent(q in prop::sample::select(vec![2u32, 3, 4]), rows in arb_rows(5, 4, 6)) {
            let a = amb(5, q);
            let rows: Vec<u64> = rows.into_iter().map(|x| a.vector_from_index(x % a.vector_count())).collect();
            let s = Subspace::span_words(a, rows.clone());
            let again = Subspace::span_words(a, s.basis().to_vec());
            prop_assert_eq!(&s, &again);
            for &r in &rows {
                prop_assert!(s.contains_word(r));
            }
            prop_assert_eq!(s.vectors().len() as u64, (q as u64).pow(s.dim() as u32));
        }

        #[test]
        fn dimension_formula(ra in arb_rows(6, 2, 4), rb in arb_rows(6, 2, 4)) {
            let a = amb(6, 2);
            let x = Subspace::span_words(a, ra);
            let y = Subspace::span_words(a, rb);
            let meet = x.intersect(&y).unwrap();
            let join = x.join(&y).unwrap();
            prop_assert_eq!(x.dim() + y.dim(), meet.dim() + join.dim());
            // brute force: the intersection is exactly the common vectors
            let common = a.vectors().filter(|&w| x.contains_word(w) && y.contains_word(w)).count();
            prop_assert_eq!(common, meet.vectors().len());
        }

        #[test]
        fn dimension_formula_gf3(ra in arb_rows(4, 3, 3), rb in arb_rows(4, 3, 3)) {
            let a = amb(4, 3);
            let x = Subspace::span_words(a, ra);
            let y = Subspace::span_words(a, rb);
            let meet = x.intersect(&y).unwrap();
            prop_assert_eq!(x.dim() + y.dim(), meet.dim() + x.join(&y).unwrap().dim());
            let common = a.vectors().filter(|&w| x.contains_word(w) && y.contains_word(w)).count();
            prop_assert_eq!(common, meet.vectors().len());
        }
    }
}
