use num_rational::Ratio;
use serde::Serialize;

use crate::enumerate::gaussian_bracket;
use crate::error::{Error, Result};

/// q-DDG parameters (v, k, λ1, λ2, n; q). `lambda2` is `None` when n = v.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DdgParams {
    pub v: u32,
    pub k: u32,
    pub lambda1: u64,
    pub lambda2: Option<u64>,
    pub n: u32,
    pub q: u32,
}

impl DdgParams {
    /// Number of spread elements, [v]_q / [n]_q.
    pub fn m(&self) -> Result<u64> {
        let q = self.q as u64;
        Ok(gaussian_bracket(self.v, q)? / gaussian_bracket(self.n, q)?)
    }
}

/// q-Deza parameters (v, k, b, a; q) with a ≤ b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DezaParams {
    pub v: u32,
    pub k: u32,
    pub b: u64,
    pub a: u64,
    pub q: u32,
}

impl DezaParams {
    pub fn new(v: u32, k: u32, b: u64, a: u64, q: u32) -> DezaParams {
        DezaParams { v, k, b, a, q }
    }
}

/// Number of other vertices sharing b (n1) resp. a (n2) common neighbours with a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DezaCounts {
    pub n1: u64,
    pub n2: u64,
}

fn bracket(i: u32, q: u32) -> Result<i128> {
    Ok(gaussian_bracket(i, q as u64)? as i128)
}

/// ([k+1]-1)^2 = ([k+1]-1) + λ1([n]-1) + λ2([v]-[n]).
pub fn ddg_parameter_identity(p: &DdgParams) -> bool {
    let eval = || -> Result<bool> {
        let d = bracket(p.k + 1, p.q)? - 1;
        let cross = bracket(p.v, p.q)? - bracket(p.n, p.q)?;
        let l2 = p.lambda2.unwrap_or(0) as i128;
        if p.lambda2.is_none() && cross != 0 {
            return Ok(false);
        }
        Ok(d * d == d + p.lambda1 as i128 * (bracket(p.n, p.q)? - 1) + l2 * cross)
    };
    eval().unwrap_or(false)
}

/// k^2 = k + λ1(n-1) + λ2 n(m-1) for a classical DDG on v = mn vertices.
pub fn classical_ddg_identity(v: u64, k: u64, lambda1: u64, lambda2: u64, m: u64, n: u64) -> Result<bool> {
    if m.checked_mul(n) != Some(v) {
        return Err(Error::InvalidParameters(format!("v = {v} is not m·n = {m}·{n}")));
    }
    let (k, l1, l2, m, n) = (k as i128, lambda1 as i128, lambda2 as i128, m as i128, n as i128);
    Ok(k * k == k + l1 * (n - 1) + l2 * n * (m - 1))
}

/// Closed-form (n1, n2) for a q-Deza graph with b ≠ a.
pub fn deza_counts(p: &DezaParams) -> Result<DezaCounts> {
    if p.a == p.b {
        return Err(Error::InvalidParameters("n1 is undefined when a = b".into()));
    }
    let q = p.q as i128;
    let (l1, l2) = (p.b as i128, p.a as i128);
    let qk = q.checked_pow(p.k).ok_or(Error::Overflow("deza counts"))?;
    let qv1 = q.checked_pow(p.v - 1).ok_or(Error::Overflow("deza counts"))?;
    let num = q * ((q * qk - 2 * q + 1) * (qk - 1) - l2 * (qv1 - 1) * (q - 1));
    let den = (l1 - l2) * (q - 1) * (q - 1);
    if den == 0 || num % den != 0 {
        return Err(Error::InvalidParameters(format!("n1 = {num}/{den} is not an integer")));
    }
    let n1 = num / den;
    let total = bracket(p.v, p.q)? - 1;
    if n1 < 0 || n1 > total {
        return Err(Error::InvalidParameters(format!("n1 = {n1} outside 0..={total}")));
    }
    Ok(DezaCounts { n1: n1 as u64, n2: (total - n1) as u64 })
}

/// (k(k-1) - a(v-1)) / (b - a) for a classical Deza graph.
pub fn classical_deza_count(v: u64, k: u64, b: u64, a: u64) -> Result<Ratio<i128>> {
    if b <= a {
        return Err(Error::InvalidParameters(format!("need b > a, got b = {b}, a = {a}")));
    }
    let (v, k, b, a) = (v as i128, k as i128, b as i128, a as i128);
    Ok(Ratio::new(k * (k - 1) - a * (v - 1), b - a))
}

/// Admissibility classes for Deza parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyTag {
    /// Parameters of the empty graph, the complete graph, a spread union of
    /// complete graphs, or a symplectic graph.
    SrgCompatible,
    /// (2k+1, k, 2^e - 1, 1; 2), k even, 2 ≤ e ≤ k-1, (e-1) | k or (e-1) | (k-2).
    Family2,
    /// (v, k, 1, 0; 2), v ≥ 2k+2, k ≥ 2, vk even.
    Family3,
    Inadmissible,
}

pub fn deza_parameter_families(p: &DezaParams) -> FamilyTag {
    if srg_compatible(p) {
        return FamilyTag::SrgCompatible;
    }
    if p.q == 2 {
        let (v, k) = (p.v as u64, p.k as u64);
        if p.a == 1 && v == 2 * k + 1 && k % 2 == 0 {
            for e in 2..k {
                let ok_div = (k % (e - 1) == 0) || ((k - 2) % (e - 1) == 0);
                if ok_div && p.b == (1u64 << e) - 1 {
                    return FamilyTag::Family2;
                }
            }
        }
        if p.b == 1 && p.a == 0 && k >= 2 && v >= 2 * k + 2 && (v * k) % 2 == 0 {
            return FamilyTag::Family3;
        }
    }
    FamilyTag::Inadmissible
}

fn srg_compatible(p: &DezaParams) -> bool {
    let br = |i: u32| gaussian_bracket(i, p.q as u64).ok().map(|x| x as i128);
    let (v, k, b, a) = (p.v, p.k, p.b as i128, p.a as i128);
    if v == 0 || k >= v {
        return false;
    }
    if k == 0 {
        return a == 0 && b == 0;
    }
    if k == v - 1 {
        return br(v).is_some_and(|n| a == n - 2 && b == a);
    }
    if v % (k + 1) == 0 && br(k + 1).is_some_and(|n| b == n - 2 && a == 0) {
        return true;
    }
    if v % 2 == 0 && k == v - 2 {
        return br(v - 2).is_some_and(|mu| b == mu && a == mu - 2);
    }
    false
}
