use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::Monomial;
use super::ring::{Ring, RingExt};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Sparse polynomial; terms sorted strictly descending in the ring order,
/// no zero coefficients, no repeated monomials.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Scalar)>,
}

/// Answer of [`Polynomial::homogeneity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial: homogeneous of every degree.
    Zero,
    Degree(u32),
    Inhomogeneous,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Polynomial {
        Self::from_terms(ring, vec![(ring.one_monomial(), c)])
    }

    pub fn one(ring: &Ring) -> Polynomial {
        Self::constant(ring, ring.field().one())
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Scalar) -> Polynomial {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Canonicalizes an arbitrary term list.
    pub fn from_terms(ring: &Ring, mut terms: Vec<(Monomial, Scalar)>) -> Polynomial {
        terms.sort_by(|a, b| ring.compare(&b.0, &a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = &last.1 + &c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if out.last().is_some_and(|t| t.1.is_zero()) {
            out.pop();
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.1)
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || self.is_unit()
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(self.ring.field().zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let Some(first) = self.terms.first() else {
            return Homogeneity::Zero;
        };
        let d = first.0.degree();
        if self.terms.iter().all(|t| t.0.degree() == d) {
            Homogeneity::Degree(d)
        } else {
            Homogeneity::Inhomogeneous
        }
    }

    /// Common weighted degree of all terms; `None` for the zero polynomial or
    /// inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        match self.homogeneity() {
            Homogeneity::Degree(d) => Some(d),
            _ => None,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        !matches!(self.homogeneity(), Homogeneity::Inhomogeneous)
    }

    /// Largest term degree.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.combine(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.combine(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.product(other))
    }

    fn combine(&self, other: &Polynomial, subtract: bool) -> Polynomial {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match ring.compare(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if subtract { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if subtract { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        let mut all = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                all.push((m.mul(n), c * d));
            }
        }
        Polynomial::from_terms(&self.ring, all)
    }

    /// Multiplication by `c * m`; order-preserving, so no re-sort.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(n, d)| (n.clone(), d * c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale_int(&self, n: i64) -> Polynomial {
        self.scale(&self.ring.scalar(n))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(c) if !c.is_one() => self.scale(&c.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn divide_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.terms.first()?;
        let lc_inv = lc.inv()?;
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.terms.first() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = c * &lc_inv;
            rest = &rest - &divisor.mul_term(&qm, &qc);
            quotient.push((qm, qc));
        }
        Some(Polynomial::from_terms(&self.ring, quotient))
    }

    /// Re-expresses the polynomial in `target`, sending variable `i` to
    /// variable `var_map[i]`.
    pub fn map_into(&self, target: &Ring, var_map: &[usize]) -> Polynomial {
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0u16; n];
                for (i, e) in m.exponents().iter().enumerate() {
                    exps[var_map[i]] += *e;
                }
                (target.monomial(&exps), c.clone())
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Homogeneous component of the given degree.
    pub fn component(&self, degree: u32) -> Polynomial {
        let terms = self.terms.iter().filter(|t| t.0.degree() == degree).cloned().collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Coefficient of a monomial.
    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|t| &t.0 == m)
            .map(|t| t.1.clone())
            .unwrap_or_else(|| self.ring.field().zero())
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}

pub(crate) fn fmt_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_display();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let abs = c.abs_display();
            let mono = fmt_monomial(m, self.ring.names());
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{Field, PolyRing};
    use proptest::prelude::*;

    fn xyz() -> (Ring, Polynomial, Polynomial, Polynomial) {
        let r = PolyRing::new(&["x", "y", "z"], Field::Rational).unwrap();
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        (r, x, y, z)
    }

    #[test]
    fn arithmetic_examples() {
        let (_, x, y, z) = xyz();
        assert_eq!((&(&x + &y) + &(&x - &y)).to_string(), "2*x");
        let dsq = &(&x - &z) * &(&x + &z);
        assert_eq!(dsq.to_string(), "x^2 - z^2");
        let prod = &(&x.pow(2) - &z.pow(2)) * &(&y.pow(2) - &z.pow(2));
        assert_eq!(prod.to_string(), "x^2*y^2 - x^2*z^2 - y^2*z^2 + z^4");
    }

    #[test]
    fn homogeneity_answers() {
        let (r, x, y, z) = xyz();
        assert_eq!((&x.pow(2) - &z.pow(2)).homogeneity(), Homogeneity::Degree(2));
        assert_eq!((&x + &y.pow(2)).homogeneity(), Homogeneity::Inhomogeneous);
        assert_eq!(Polynomial::zero(&r).homogeneity(), Homogeneity::Zero);
        assert_eq!(Polynomial::zero(&r).homogeneous_degree(), None);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let (_, x, _, _) = xyz();
        let other = PolyRing::new(&["u"], Field::Rational).unwrap();
        assert_eq!(x.checked_add(&other.var(0)), Err(Error::RingMismatch));
    }

    #[test]
    fn exact_division() {
        let (_, x, y, z) = xyz();
        let f = &(&x + &y) * &(&x - &z);
        assert_eq!(f.divide_exact(&(&x - &z)).unwrap(), &x + &y);
        assert!(f.divide_exact(&y).is_none());
    }

    proptest! {
        // canonical form does not depend on the order in which terms arrive
        #[test]
        fn shuffled_terms_canonicalize(coeffs in proptest::collection::vec((0u16..3, 0u16..3, 0u16..3, -5i64..5), 0..12), seed in 0u64..1000) {
            let r = PolyRing::new(&["x", "y", "z"], Field::Prime(32003)).unwrap();
            let terms: Vec<_> = coeffs.iter().map(|(a, b, c, k)| (r.monomial(&[*a, *b, *c]), r.scalar(*k))).collect();
            let mut shuffled = terms.clone();
            let n = shuffled.len();
            if n > 1 {
                for i in 0..n {
                    let j = ((seed as usize).wrapping_mul(31).wrapping_add(i * 17)) % n;
                    shuffled.swap(i, j);
                }
            }
            prop_assert_eq!(Polynomial::from_terms(&r, terms), Polynomial::from_terms(&r, shuffled));
        }

        #[test]
        fn product_degree_adds(a in proptest::collection::vec((0u16..3, 0u16..3, 1i64..5), 1..5), b in proptest::collection::vec((0u16..3, 0u16..3, 1i64..5), 1..5)) {
            let r = PolyRing::new(&["x", "y", "z"], Field::Prime(32003)).unwrap();
            // homogenize with z to a fixed degree 6
            let mk = |v: &Vec<(u16, u16, i64)>| Polynomial::from_terms(&r, v.iter().map(|(i, j, k)| (r.monomial(&[*i, *j, 6 - i - j]), r.scalar(*k))).collect());
            let (p, q) = (mk(&a), mk(&b));
            let pq = &p * &q;
            if !pq.is_zero() {
                prop_assert_eq!(pq.homogeneous_degree(), Some(12));
            }
        }
    }
}
