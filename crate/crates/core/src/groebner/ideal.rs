use std::fmt;
use std::sync::{Arc, OnceLock};

use super::engine::{self, poly_to_vector, vector_to_poly, GbOptions, ModuleOrder, Reducer, Vector};
use super::hilbert::{monomial_dimension, monomial_numerator, HilbertData};
use crate::error::{Error, Result};
use crate::rings::{Homogeneity, MonomialOrder, PolyRing, Polynomial, Ring, RingExt};

/// Immutable ideal with lazily computed, write-once caches.
#[derive(Clone)]
pub struct Ideal {
    inner: Arc<Inner>,
}

struct Inner {
    ring: Ring,
    gens: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
    mingens: OnceLock<Vec<Polynomial>>,
    dim: OnceLock<Option<usize>>,
    hilbert: OnceLock<HilbertData>,
}

impl Ideal {
    /// Ideal generated by homogeneous polynomials; zero generators are dropped.
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            if !g.ring().same(ring) {
                return Err(Error::RingMismatch);
            }
            if g.homogeneity() == Homogeneity::Inhomogeneous {
                return Err(Error::Inhomogeneous(g.to_string()));
            }
        }
        Ok(Self::build(ring, gens))
    }

    /// Ideal without the homogeneity requirement; only for auxiliary rings.
    pub(crate) fn new_unchecked(ring: &Ring, gens: Vec<Polynomial>) -> Ideal {
        Self::build(ring, gens)
    }

    fn build(ring: &Ring, gens: Vec<Polynomial>) -> Ideal {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            inner: Arc::new(Inner {
                ring: ring.clone(),
                gens,
                gb: OnceLock::new(),
                mingens: OnceLock::new(),
                dim: OnceLock::new(),
                hilbert: OnceLock::new(),
            }),
        }
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Self::build(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Self::build(ring, vec![Polynomial::one(ring)])
    }

    /// The homogeneous maximal ideal.
    pub fn maximal(ring: &Ring) -> Ideal {
        Self::build(ring, ring.vars())
    }

    pub fn ring(&self) -> &Ring {
        &self.inner.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.inner.gens
    }

    fn order(&self) -> ModuleOrder {
        ModuleOrder::ideal(&self.inner.ring)
    }

    /// Reduced Gröbner basis, monic, sorted ascending by leading term.
    pub fn groebner_basis(&self) -> &[Polynomial] {
        self.inner.gb.get_or_init(|| {
            let order = self.order();
            let gens: Vec<Vector> = self.inner.gens.iter().map(|g| poly_to_vector(g, 0)).collect();
            let out = engine::groebner(&order, &gens, GbOptions::default());
            out.basis.iter().map(|v| vector_to_poly(&self.inner.ring, v)).collect()
        })
    }

    /// A minimal homogeneous generating set drawn from the given generators,
    /// ordered by degree.
    pub fn minimal_generators(&self) -> &[Polynomial] {
        self.inner.mingens.get_or_init(|| {
            let order = self.order();
            let gens: Vec<Vector> = self.inner.gens.iter().map(|g| poly_to_vector(g, 0)).collect();
            let out = engine::groebner(&order, &gens, GbOptions { mingens: true, ..Default::default() });
            let _ = self.inner.gb.set(out.basis.iter().map(|v| vector_to_poly(&self.inner.ring, v)).collect());
            out.mingens.iter().map(|&k| self.inner.gens[k].clone()).collect()
        })
    }

    pub fn num_minimal_generators(&self) -> usize {
        self.minimal_generators().len()
    }

    pub fn is_zero(&self) -> bool {
        self.inner.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis().first().is_some_and(|g| g.is_unit())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !f.ring().same(self.ring()) {
            return Err(Error::RingMismatch);
        }
        let order = self.order();
        let basis: Vec<Vector> = self.groebner_basis().iter().map(|g| poly_to_vector(g, 0)).collect();
        let red = Reducer::new(&order, &basis);
        Ok(vector_to_poly(self.ring(), &red.reduce(poly_to_vector(f, 0), false)))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool> {
        if !self.ring().same(other.ring()) {
            return Err(Error::RingMismatch);
        }
        for g in self.gens() {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals, by comparing reduced Gröbner bases.
    pub fn equals(&self, other: &Ideal) -> bool {
        self.ring().same(other.ring()) && self.groebner_basis() == other.groebner_basis()
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if !self.ring().same(other.ring()) {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.gens().to_vec();
        gens.extend(other.gens().iter().cloned());
        Ok(Self::build(self.ring(), gens))
    }

    pub fn add_generators(&self, extra: &[Polynomial]) -> Result<Ideal> {
        self.sum(&Ideal::new(self.ring(), extra.to_vec())?)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if !self.ring().same(other.ring()) {
            return Err(Error::RingMismatch);
        }
        let mut gens = Vec::new();
        for a in self.gens() {
            for b in other.gens() {
                gens.push(a * b);
            }
        }
        Ok(Self::build(self.ring(), gens))
    }

    pub fn scale(&self, f: &Polynomial) -> Result<Ideal> {
        self.product(&Ideal::new(self.ring(), vec![f.clone()])?)
    }

    /// Intersection via the auxiliary-variable elimination t*I + (1-t)*J.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        if !self.ring().same(other.ring()) {
            return Err(Error::RingMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(self.ring()));
        }
        let scratch = Scratch::new(self.ring())?;
        let t = scratch.ring.var(0);
        let one_minus_t = &scratch.ring.constant(1) - &t;
        let mut gens = Vec::new();
        for g in self.gens() {
            gens.push(&t * &scratch.lift(g));
        }
        for g in other.gens() {
            gens.push(&one_minus_t * &scratch.lift(g));
        }
        let eliminated = scratch.eliminate(gens);
        Ideal::new(self.ring(), eliminated)
    }

    /// The quotient I : (f).
    pub fn quotient_by(&self, f: &Polynomial) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if !f.ring().same(self.ring()) {
            return Err(Error::RingMismatch);
        }
        if self.is_zero() {
            return Ok(Ideal::zero(self.ring()));
        }
        if f.is_unit() {
            return Ok(self.clone());
        }
        let inter = self.intersect(&Ideal::new(self.ring(), vec![f.clone()])?)?;
        let mut gens = Vec::with_capacity(inter.gens().len());
        for g in inter.gens() {
            gens.push(g.divide_exact(f).expect("intersection with (f) is divisible by f"));
        }
        Ideal::new(self.ring(), gens)
    }

    /// The ideal quotient I : J = intersection of I : (g) over generators g of J.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        if !self.ring().same(other.ring()) {
            return Err(Error::RingMismatch);
        }
        let gens = other.minimal_generators();
        if gens.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        let mut acc: Option<Ideal> = None;
        for g in gens {
            let q = self.quotient_by(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => {
                    if a.is_subset_of(&q)? {
                        a
                    } else if q.is_subset_of(&a)? {
                        q
                    } else {
                        a.intersect(&q)?
                    }
                }
            });
        }
        Ok(acc.unwrap())
    }

    /// Whether f is a nonzerodivisor on R/I.
    pub fn is_nonzerodivisor(&self, f: &Polynomial) -> Result<bool> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.is_unit() {
            return Ok(true);
        }
        self.quotient_by(f)?.is_subset_of(self)
    }

    fn leading_exponents(&self) -> Vec<Vec<u16>> {
        self.groebner_basis()
            .iter()
            .map(|g| g.leading_monomial().unwrap().exponents().to_vec())
            .collect()
    }

    /// Krull dimension of R/I, `None` for the unit ideal.
    pub fn dimension(&self) -> Option<usize> {
        *self
            .inner
            .dim
            .get_or_init(|| monomial_dimension(&self.leading_exponents(), self.ring().nvars()))
    }

    /// Codimension; by convention the unit ideal has grade n.
    pub fn grade(&self) -> usize {
        let n = self.ring().nvars();
        match self.dimension() {
            Some(d) => n - d,
            None => n,
        }
    }

    /// Hilbert series of R/I.
    pub fn hilbert(&self) -> &HilbertData {
        self.inner.hilbert.get_or_init(|| {
            let ring = self.ring();
            let num = monomial_numerator(&self.leading_exponents(), ring.weights());
            HilbertData::new(num, ring.weights().to_vec(), self.dimension().unwrap_or(0))
        })
    }

    pub fn render(&self) -> String {
        let gens: Vec<String> = self.gens().iter().map(|g| g.to_string()).collect();
        format!("({})", gens.join(", "))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{}", self.render())
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// R[t] with t eliminated first.
struct Scratch {
    base: Ring,
    ring: Ring,
    map: Vec<usize>,
}

impl Scratch {
    fn new(base: &Ring) -> Result<Scratch> {
        let mut name = String::from("t");
        while base.index_of(&name).is_some() {
            name.push('_');
        }
        let mut names = vec![name];
        names.extend(base.names().iter().cloned());
        let mut weights = vec![1u32];
        weights.extend(base.weights().iter().copied());
        let ring = PolyRing::with_weights(&names, &weights, base.field(), MonomialOrder::Elimination(1))?;
        let map = (1..=base.nvars()).collect();
        Ok(Scratch { base: base.clone(), ring, map })
    }

    fn lift(&self, p: &Polynomial) -> Polynomial {
        p.map_into(&self.ring, &self.map)
    }

    /// Gröbner basis elements free of t, mapped back to the base ring.
    fn eliminate(&self, gens: Vec<Polynomial>) -> Vec<Polynomial> {
        let gb = Ideal::new_unchecked(&self.ring, gens);
        gb.groebner_basis()
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[0] == 0))
            .map(|g| {
                let terms = g
                    .terms()
                    .iter()
                    .map(|(m, c)| (self.base.monomial(&m.exponents()[1..]), c.clone()))
                    .collect();
                Polynomial::from_terms(&self.base, terms)
            })
            .collect()
    }
}
