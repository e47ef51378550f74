//! Small finite fields F_q, q = p^e.
//!
//! Elements are encoded as integers `0..q`: the element `c_0 + c_1 α + ... + c_{e-1} α^{e-1}`
//! of F_p[α]/(m(α)) is stored as `Σ c_i p^i`. Arithmetic goes through full
//! q×q tables, which is cheap for the sizes supported here (q ≤ 16).

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest field order with precomputed tables.
pub const MAX_Q: u32 = 16;

/// Parameters of a field: `q = p^e` and the reduction modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub q: u32,
    pub p: u32,
    pub e: u32,
    /// Monic irreducible polynomial of degree `e` over F_p, coefficients from
    /// the constant term up. `[0, 1]` (the polynomial x) when `e = 1`.
    pub modulus: Vec<u8>,
}

impl FieldSpec {
    /// Builds the spec for `q`, choosing the lexicographically smallest monic
    /// irreducible modulus (coefficient vector read as a base-p integer,
    /// constant term least significant).
    pub fn new(q: u32) -> Result<FieldSpec> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_Q {
            return Err(Error::FieldTooLarge(q));
        }
        let prime = PrimeField { p };
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            first_irreducible(&prime, e as usize)
        };
        let spec = FieldSpec { q, p, e, modulus };
        spec.check_modulus()?;
        Ok(spec)
    }

    /// Verifies irreducibility of the modulus by trial division against every
    /// monic polynomial of degree `1..=e/2` over F_p.
    pub fn check_modulus(&self) -> Result<()> {
        if self.e == 1 {
            return Ok(());
        }
        let prime = PrimeField { p: self.p };
        if self.modulus.len() != self.e as usize + 1 || *self.modulus.last().unwrap() != 1 {
            return Err(Error::ReducibleModulus(self.q));
        }
        if is_irreducible(&prime, &self.modulus) {
            Ok(())
        } else {
            Err(Error::ReducibleModulus(self.q))
        }
    }
}

/// A finite field with precomputed arithmetic tables.
#[derive(Debug)]
pub struct Field {
    spec: FieldSpec,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl Field {
    /// Shared field of order `q`. Tables are built on first use.
    pub fn get(q: u32) -> Result<&'static Field> {
        static FIELDS: [OnceLock<Option<Field>>; MAX_Q as usize + 1] =
            [const { OnceLock::new() }; MAX_Q as usize + 1];
        if q > MAX_Q {
            return Err(Error::FieldTooLarge(q));
        }
        let slot = FIELDS[q as usize].get_or_init(|| FieldSpec::new(q).ok().map(Field::build));
        slot.as_ref().ok_or(Error::NotPrimePower(q))
    }

    fn build(spec: FieldSpec) -> Field {
        let q = spec.q as usize;
        let p = spec.p;
        let e = spec.e as usize;
        let digits = |mut x: usize| -> Vec<u32> {
            let mut d = vec![0u32; e];
            for slot in d.iter_mut() {
                *slot = (x % p as usize) as u32;
                x /= p as usize;
            }
            d
        };
        let undigits = |d: &[u32]| -> u8 {
            d.iter().rev().fold(0u32, |acc, &c| acc * p + c) as u8
        };
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&sum);
                // schoolbook product, then reduce modulo the monic modulus
                let mut prod = vec![0u32; 2 * e];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (e..2 * e).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    for (k, &m) in spec.modulus.iter().enumerate().take(e) {
                        let idx = deg - e + k;
                        prod[idx] = (prod[idx] + p - (c * m as u32) % p) % p;
                    }
                    prod[deg] = 0;
                }
                mul[a * q + b] = undigits(&prod[..e]);
            }
        }
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            neg[a] = (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u8;
            }
        }
        Field { spec, add, mul, neg, inv }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.spec.q
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.spec.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.spec.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }
}

/// Returns `(p, e)` with `q = p^e`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Arithmetic needed by the polynomial helpers.
pub(crate) trait Scalars {
    fn order(&self) -> u32;
    fn add(&self, a: u8, b: u8) -> u8;
    fn mul(&self, a: u8, b: u8) -> u8;
    fn neg(&self, a: u8) -> u8;
}

struct PrimeField {
    p: u32,
}

impl Scalars for PrimeField {
    fn order(&self) -> u32 {
        self.p
    }
    fn add(&self, a: u8, b: u8) -> u8 {
        ((a as u32 + b as u32) % self.p) as u8
    }
    fn mul(&self, a: u8, b: u8) -> u8 {
        ((a as u32 * b as u32) % self.p) as u8
    }
    fn neg(&self, a: u8) -> u8 {
        ((self.p - a as u32) % self.p) as u8
    }
}

impl Scalars for Field {
    fn order(&self) -> u32 {
        self.q()
    }
    fn add(&self, a: u8, b: u8) -> u8 {
        Field::add(self, a, b)
    }
    fn mul(&self, a: u8, b: u8) -> u8 {
        Field::mul(self, a, b)
    }
    fn neg(&self, a: u8) -> u8 {
        Field::neg(self, a)
    }
}

/// Monic polynomial of the given degree whose lower coefficients, read as a
/// base-q integer with the constant term least significant, equal `index`.
fn monic_from_index<F: Scalars>(f: &F, degree: usize, mut index: u64) -> Vec<u8> {
    let q = f.order() as u64;
    let mut poly = Vec::with_capacity(degree + 1);
    for _ in 0..degree {
        poly.push((index % q) as u8);
        index /= q;
    }
    poly.push(1);
    poly
}

/// Remainder of `num` modulo the monic polynomial `den`.
fn poly_rem<F: Scalars>(f: &F, num: &[u8], den: &[u8]) -> Vec<u8> {
    let mut r = num.to_vec();
    let d = den.len() - 1;
    while r.len() > d {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - d;
        if lead != 0 {
            for (k, &c) in den.iter().enumerate() {
                let t = f.mul(lead, c);
                r[shift + k] = f.add(r[shift + k], f.neg(t));
            }
        }
        r.pop();
    }
    r
}

pub(crate) fn is_irreducible<F: Scalars>(f: &F, poly: &[u8]) -> bool {
    let degree = poly.len() - 1;
    if degree <= 1 {
        return degree == 1;
    }
    let q = f.order() as u64;
    for d in 1..=degree / 2 {
        for idx in 0..q.pow(d as u32) {
            let cand = monic_from_index(f, d, idx);
            if poly_rem(f, poly, &cand).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The lexicographically first monic irreducible polynomial of `degree` over the field.
pub(crate) fn first_irreducible<F: Scalars>(f: &F, degree: usize) -> Vec<u8> {
    let q = f.order() as u64;
    (0..q.pow(degree as u32))
        .map(|idx| monic_from_index(f, degree, idx))
        .find(|p| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

/// Monic irreducible polynomial of `degree` over F_q, lowest in lexicographic order.
pub fn irreducible_over(field: &Field, degree: usize) -> Vec<u8> {
    if degree == 1 {
        return vec![0, 1];
    }
    first_irreducible(field, degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(4), Some((2, 2)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn gf4_modulus_is_x2_x_1() {
        let f = Field::get(4).unwrap();
        assert_eq!(f.spec().modulus, vec![1, 1, 1]);
        // α·α = α + 1
        assert_eq!(f.mul(2, 2), 3);
    }

    #[test]
    fn field_axioms_small() {
        for q in [2u32, 3, 4, 5, 7, 8, 9, 16] {
            let f = Field::get(q).unwrap();
            for a in 0..q as u8 {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "q={q} a={a}");
                }
                for b in 0..q as u8 {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q as u8 {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(matches!(Field::get(6), Err(Error::NotPrimePower(6))));
        assert!(matches!(Field::get(32), Err(Error::FieldTooLarge(32))));
    }

    #[test]
    fn reducible_modulus_is_caught() {
        let spec = FieldSpec { q: 4, p: 2, e: 2, modulus: vec![1, 0, 1] };
        assert!(spec.check_modulus().is_err());
    }
}
