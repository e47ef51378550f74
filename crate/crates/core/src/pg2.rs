//! Lookup tables for points and lines of PG(v-1, 2).
//!
//! Points are nonzero words `1..2^v` (point id = word - 1); lines are numbered
//! in the canonical enumeration order of 2-subspaces.

use crate::enumerate::SubspaceEnumeration;
use crate::error::{Error, Result};
use crate::space::{Ambient, Subspace};

/// Fixed-width bitmask over line ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineMask<const W: usize>(pub [u64; W]);

impl<const W: usize> LineMask<W> {
    pub const EMPTY: Self = LineMask([0; W]);

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..W * 64).filter(move |&i| self.get(i))
    }
}

/// Points and lines of PG(v-1, 2), v ≤ 8.
#[derive(Clone, Debug)]
pub struct Pg2 {
    pub ambient: Ambient,
    /// Point words of each line, increasing.
    pub lines: Vec<[u32; 3]>,
    pair: Vec<u32>,
    n: usize,
}

impl Pg2 {
    pub fn new(v: usize) -> Result<Pg2> {
        if !(2..=8).contains(&v) {
            return Err(Error::InvalidParameters(format!("line tables support 2 ≤ v ≤ 8, got {v}")));
        }
        let ambient = Ambient::new(v, 2)?;
        let n = (1usize << v) - 1;
        let lines: Vec<[u32; 3]> = SubspaceEnumeration::new(ambient, 2)?
            .iter()
            .map(|l| {
                let p = l.point_words();
                [p[0] as u32, p[1] as u32, p[2] as u32]
            })
            .collect();
        let mut pair = vec![u32::MAX; (n + 1) * (n + 1)];
        for (id, l) in lines.iter().enumerate() {
            for &a in l {
                for &b in l {
                    if a != b {
                        pair[a as usize * (n + 1) + b as usize] = id as u32;
                    }
                }
            }
        }
        Ok(Pg2 { ambient, lines, pair, n })
    }

    pub fn point_count(&self) -> usize {
        self.n
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    /// Line through two distinct point words.
    #[inline]
    pub fn line_through(&self, a: u64, b: u64) -> usize {
        self.pair[a as usize * (self.n + 1) + b as usize] as usize
    }

    pub fn line_id(&self, s: &Subspace) -> usize {
        let b = s.basis();
        self.line_through(b[0], b[1])
    }

    pub fn line_subspace(&self, id: usize) -> Subspace {
        let [a, b, _] = self.lines[id];
        Subspace::span_words(self.ambient, [a as u64, b as u64])
    }

    pub fn mask<const W: usize>(&self, lines: &[Subspace]) -> LineMask<W> {
        let mut m = LineMask::EMPTY;
        for l in lines {
            m.set(self.line_id(l));
        }
        m
    }

    pub fn subspaces<const W: usize>(&self, m: &LineMask<W>) -> Vec<Subspace> {
        m.ones().map(|i| self.line_subspace(i)).collect()
    }

    /// Image of a line set under a point map given as a table indexed by word.
    #[inline]
    pub fn map_mask<const W: usize>(&self, m: &LineMask<W>, image: &[u64]) -> LineMask<W> {
        let mut out = LineMask::EMPTY;
        for id in m.ones() {
            let [a, b, _] = self.lines[id];
            out.set(self.line_through(image[a as usize], image[b as usize]));
        }
        out
    }
}

/// Table `x -> x·M` for all words x, M given by its rows.
pub fn image_table(v: usize, rows: &[u64]) -> Vec<u64> {
    let mut t = vec![0u64; 1 << v];
    for x in 1..(1usize << v) {
        let low = x.trailing_zeros() as usize;
        // bit `low` is coordinate v-1-low
        t[x] = t[x & (x - 1)] ^ rows[v - 1 - low];
    }
    t
}
