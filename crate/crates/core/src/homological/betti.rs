use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::complex::ChainComplex;
use crate::error::{Error, Result};

/// Graded Betti numbers beta_{i,j} of a minimal resolution of R/I: the number
/// of generators of degree j in F_i.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: i64,
    pub rank: usize,
}

impl BettiTable {
    /// Reads off the table of a minimal complex; non-minimal input is rejected.
    pub fn from_complex(c: &ChainComplex) -> Result<BettiTable> {
        for (k, d) in c.maps().iter().enumerate() {
            if d.unit_entry().is_some() {
                return Err(Error::NotMinimal(k + 1));
            }
        }
        Ok(Self::from_ranks_of(c))
    }

    /// Twist multiplicities of any complex, minimal or not.
    pub fn from_ranks_of(c: &ChainComplex) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (i, m) in c.modules().iter().enumerate() {
            for &t in m.degrees() {
                *entries.entry((i, t)).or_insert(0) += 1;
            }
        }
        BettiTable { entries }
    }

    pub fn from_entries(list: &[(usize, i64, usize)]) -> BettiTable {
        let mut entries = BTreeMap::new();
        for &(i, j, r) in list {
            if r > 0 {
                *entries.entry((i, j)).or_insert(0) += r;
            }
        }
        BettiTable { entries }
    }

    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> Vec<BettiEntry> {
        self.entries.iter().map(|(&(i, j), &rank)| BettiEntry { i, j, rank }).collect()
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// Total ranks of F_0, F_1, ...
    pub fn ranks(&self) -> Vec<usize> {
        let mut out = vec![0; self.projective_dimension() + 1];
        for (&(i, _), &r) in &self.entries {
            out[i] += r;
        }
        out
    }

    /// Ranks of F_1, F_2, ... (the ideal's own resolution).
    pub fn ideal_ranks(&self) -> Vec<usize> {
        self.ranks().into_iter().skip(1).collect()
    }

    /// Sorted distinct generator degrees in F_i.
    pub fn degrees(&self, i: usize) -> Vec<i64> {
        self.entries.keys().filter(|(k, _)| *k == i).map(|(_, j)| *j).collect()
    }

    /// reg R/I = max { j - i : beta_{i,j} != 0 }.
    pub fn quotient_regularity(&self) -> Option<i64> {
        self.entries.keys().map(|&(i, j)| j - i as i64).max()
    }

    /// reg I = max { j - i + 1 : beta_{i,j}(R/I) != 0, i >= 1 }, the ideal's
    /// own indexing.
    pub fn ideal_regularity(&self) -> Option<i64> {
        self.entries.keys().filter(|(i, _)| *i >= 1).map(|&(i, j)| j - i as i64 + 1).max()
    }

    /// Self-duality beta_{i,j} = beta_{g-i, w-j} of a Gorenstein quotient of
    /// codimension g with top degree w.
    pub fn is_gorenstein_symmetric(&self) -> bool {
        let g = self.projective_dimension();
        let top = self.degrees(g);
        if top.len() != 1 || self.get(g, top[0]) != 1 {
            return false;
        }
        let w = top[0];
        self.entries.iter().all(|(&(i, j), &r)| i <= g && self.get(g - i, w - j) == r)
    }
}

/// Grid with rows j - i and columns i, in the usual layout.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return writeln!(f, "0");
        }
        let pd = self.projective_dimension();
        let rows: Vec<i64> = {
            let mut r: Vec<i64> = self.entries.keys().map(|&(i, j)| j - i as i64).collect();
            r.sort();
            r.dedup();
            r
        };
        let (lo, hi) = (rows[0], *rows.last().unwrap());
        let ranks = self.ranks();
        let width = ranks.iter().map(|r| r.to_string().len()).max().unwrap_or(1).max(1) + 1;
        let label = hi.to_string().len().max(lo.to_string().len()).max(6);
        write!(f, "{:>label$}", "")?;
        for i in 0..=pd {
            write!(f, "{:>width$}", i)?;
        }
        writeln!(f)?;
        write!(f, "{:>label$}", "total:")?;
        for r in &ranks {
            write!(f, "{:>width$}", r)?;
        }
        writeln!(f)?;
        for row in lo..=hi {
            write!(f, "{:>label$}", format!("{row}:"))?;
            for i in 0..=pd {
                let v = self.get(i, row + i as i64);
                if v == 0 {
                    write!(f, "{:>width$}", ".")?;
                } else {
                    write!(f, "{:>width$}", v)?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
