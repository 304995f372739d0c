use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

pub(crate) type Exponents = SmallVec<[u16; 12]>;

/// Exponent vector with its cached weighted degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: &[u16], weights: &[u32]) -> Monomial {
        debug_assert_eq!(exps.len(), weights.len());
        let degree = exps.iter().zip(weights).map(|(e, w)| *e as u32 * w).sum();
        Monomial { exps: SmallVec::from_slice(exps), degree }
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial { exps: SmallVec::from_elem(0, nvars), degree: 0 }
    }

    pub fn variable(index: usize, weights: &[u32]) -> Monomial {
        let mut exps: Exponents = SmallVec::from_elem(0, weights.len());
        exps[index] = 1;
        Monomial { exps, degree: weights[index] }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0 && self.exps.iter().all(|e| *e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { exps, degree: self.degree + other.degree }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps = other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Monomial { exps, degree: other.degree - self.degree }
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let exps: Exponents = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().zip(weights).map(|(e, w)| *e as u32 * w).sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit i set when variable i (mod 64) occurs.
    pub(crate) fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .fold(0u64, |m, (i, _)| m | (1u64 << (i % 64)))
    }
}

/// Monomial orders. Elimination orders compare the first `k` variables
/// (weighted grevlex) before the rest (weighted grevlex).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    Elimination(usize),
}

impl MonomialOrder {
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::Grevlex)
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex(&a.exps, &b.exps, a.degree, b.degree),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Elimination(k) => {
                let k = (*k).min(a.exps.len());
                let wdeg = |e: &[u16], w: &[u32]| -> u32 { e.iter().zip(w).map(|(x, y)| *x as u32 * y).sum() };
                let (ha, hb) = (&a.exps[..k], &b.exps[..k]);
                let (da, db) = (wdeg(ha, &weights[..k]), wdeg(hb, &weights[..k]));
                grevlex(ha, hb, da, db)
                    .then_with(|| grevlex(&a.exps[k..], &b.exps[k..], a.degree - da, b.degree - db))
            }
        }
    }
}

fn grevlex(a: &[u16], b: &[u16], da: u32, db: u32) -> Ordering {
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        let w = [1, 1, 1];
        let xz = Monomial::new(&[1, 0, 1], &w);
        let y2 = Monomial::new(&[0, 2, 0], &w);
        // x > y > z: y^2 > xz in grevlex, xz > y^2 in lex
        assert_eq!(MonomialOrder::Grevlex.compare(&y2, &xz, &w), Ordering::Greater);
        assert_eq!(MonomialOrder::Lex.compare(&y2, &xz, &w), Ordering::Less);
    }

    #[test]
    fn elimination_prefers_first_block() {
        let w = [1, 1, 1];
        let t = Monomial::new(&[1, 0, 0], &w);
        let yz = Monomial::new(&[0, 5, 5], &w);
        assert_eq!(MonomialOrder::Elimination(1).compare(&t, &yz, &w), Ordering::Greater);
    }

    #[test]
    fn weighted_degree() {
        let m = Monomial::new(&[2, 1], &[1, 3]);
        assert_eq!(m.degree(), 5);
        let l = m.lcm(&Monomial::new(&[0, 2], &[1, 3]), &[1, 3]);
        assert_eq!(l.exponents(), &[2, 2]);
        assert_eq!(l.degree(), 8);
    }
}
