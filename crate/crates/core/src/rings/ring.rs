use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::Polynomial;
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Graded polynomial ring over an exact field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    names: Vec<String>,
    weights: Vec<u32>,
    field: Field,
    order: MonomialOrder,
}

/// Rings are shared between all polynomials that live in them.
pub type Ring = Arc<PolyRing>;

impl PolyRing {
    pub fn new<S: AsRef<str>>(names: &[S], field: Field) -> Result<Ring> {
        let weights = vec![1; names.len()];
        Self::with_weights(names, &weights, field, MonomialOrder::Grevlex)
    }

    pub fn with_weights<S: AsRef<str>>(
        names: &[S],
        weights: &[u32],
        field: Field,
        order: MonomialOrder,
    ) -> Result<Ring> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.len() != weights.len() {
            return Err(Error::InvalidRing(format!(
                "{} variables but {} weights",
                names.len(),
                weights.len()
            )));
        }
        let mut seen = HashSet::new();
        for n in &names {
            if n.is_empty() || !seen.insert(n.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate or empty variable name `{n}`")));
            }
        }
        if weights.contains(&0) {
            return Err(Error::InvalidRing("degree weights must be positive".into()));
        }
        if let MonomialOrder::Elimination(k) = order {
            if k > names.len() {
                return Err(Error::InvalidRing(format!("cannot eliminate {k} of {} variables", names.len())));
            }
        }
        Ok(Arc::new(PolyRing { names, weights: weights.to_vec(), field, order }))
    }

    /// Ring in variables `x1..xn` (or the given prefix).
    pub fn indexed(prefix: &str, n: usize, field: Field) -> Result<Ring> {
        let names: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        Self::new(&names, field)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b, &self.weights)
    }

    pub fn monomial(&self, exps: &[u16]) -> Monomial {
        Monomial::new(exps, &self.weights)
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    pub fn scalar(&self, n: i64) -> Scalar {
        self.field.from_i64(n)
    }

    /// All monomials of weighted degree `d`, in descending order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u16; self.nvars()];
        fill_monomials(&self.weights, 0, d, &mut exps, &mut out, self);
        out.sort_by(|a, b| self.compare(b, a));
        out
    }
}

fn fill_monomials(weights: &[u32], i: usize, left: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>, ring: &PolyRing) {
    if i == weights.len() {
        if left == 0 {
            out.push(ring.monomial(exps));
        }
        return;
    }
    let mut e = 0u32;
    while e * weights[i] <= left {
        exps[i] = e as u16;
        fill_monomials(weights, i + 1, left - e * weights[i], exps, out, ring);
        e += 1;
    }
    exps[i] = 0;
}

/// Ring-level helpers that need the `Arc`.
pub trait RingExt {
    fn var(&self, index: usize) -> Polynomial;
    fn var_named(&self, name: &str) -> Option<Polynomial>;
    fn vars(&self) -> Vec<Polynomial>;
    fn constant(&self, n: i64) -> Polynomial;
    fn same(&self, other: &Ring) -> bool;
}

impl RingExt for Ring {
    fn var(&self, index: usize) -> Polynomial {
        Polynomial::from_terms(self, vec![(Monomial::variable(index, self.weights()), self.field().one())])
    }

    fn var_named(&self, name: &str) -> Option<Polynomial> {
        self.index_of(name).map(|i| self.var(i))
    }

    fn vars(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    fn constant(&self, n: i64) -> Polynomial {
        Polynomial::constant(self, self.scalar(n))
    }

    fn same(&self, other: &Ring) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.names.join(", "))
    }
}
