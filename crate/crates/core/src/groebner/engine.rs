//! Buchberger's algorithm for submodules of graded free modules.
//!
//! Vectors are sorted term lists in a position-aware module order. Ideals are
//! rank-one modules with a single untwisted component.

use std::cmp::Ordering;

use crate::rings::{Monomial, Polynomial, Ring, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Term {
    pub mono: Monomial,
    pub comp: usize,
    pub coeff: Scalar,
}

pub(crate) type Vector = Vec<Term>;

/// Module order: optional block split (components `< split` dominate), then
/// total degree when the ring order is graded, then the ring order, then
/// position with smaller indices larger.
#[derive(Debug, Clone)]
pub(crate) struct ModuleOrder {
    pub ring: Ring,
    pub twists: Vec<i64>,
    pub split: Option<usize>,
}

impl ModuleOrder {
    pub fn ideal(ring: &Ring) -> ModuleOrder {
        ModuleOrder { ring: ring.clone(), twists: vec![0], split: None }
    }

    #[inline]
    pub fn term_degree(&self, m: &Monomial, comp: usize) -> i64 {
        m.degree() as i64 + self.twists[comp]
    }

    #[inline]
    pub fn in_upper_block(&self, comp: usize) -> bool {
        self.split.is_none_or(|s| comp < s)
    }

    pub fn compare(&self, a: &Monomial, ca: usize, b: &Monomial, cb: usize) -> Ordering {
        if self.split.is_some() {
            let (ua, ub) = (self.in_upper_block(ca), self.in_upper_block(cb));
            if ua != ub {
                return if ua { Ordering::Greater } else { Ordering::Less };
            }
        }
        if self.ring.order().is_graded() {
            let o = self.term_degree(a, ca).cmp(&self.term_degree(b, cb));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.ring.compare(a, b).then_with(|| cb.cmp(&ca))
    }

    #[inline]
    fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        self.compare(&a.mono, a.comp, &b.mono, b.comp)
    }

    /// Sorts descending and merges equal terms.
    pub fn canonicalize(&self, mut v: Vector) -> Vector {
        v.sort_by(|a, b| self.cmp_terms(b, a));
        let mut out: Vector = Vec::with_capacity(v.len());
        for t in v {
            match out.last_mut() {
                Some(last) if last.mono == t.mono && last.comp == t.comp => {
                    last.coeff = &last.coeff + &t.coeff;
                }
                _ => {
                    if out.last().is_some_and(|l| l.coeff.is_zero()) {
                        out.pop();
                    }
                    out.push(t);
                }
            }
        }
        if out.last().is_some_and(|l| l.coeff.is_zero()) {
            out.pop();
        }
        out
    }

    pub fn vector_degree(&self, v: &[Term]) -> Option<i64> {
        v.iter().map(|t| self.term_degree(&t.mono, t.comp)).max()
    }

    /// `a - c * m * b` where the leading terms cancel; both leads are skipped.
    fn sub_scaled_tail(&self, a: &[Term], c: &Scalar, m: &Monomial, b: &[Term]) -> Vector {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut pending: Option<Term> = None;
        while i < a.len() || j < b.len() {
            if pending.is_none() && j < b.len() {
                let t = &b[j];
                pending = Some(Term { mono: t.mono.mul(m), comp: t.comp, coeff: -&(&t.coeff * c) });
            }
            match (a.get(i), pending.as_ref()) {
                (Some(x), Some(y)) => match self.cmp_terms(x, y) {
                    Ordering::Greater => {
                        out.push(x.clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(pending.take().unwrap());
                        j += 1;
                    }
                    Ordering::Equal => {
                        let s = &x.coeff + &y.coeff;
                        if !s.is_zero() {
                            out.push(Term { mono: x.mono.clone(), comp: x.comp, coeff: s });
                        }
                        pending = None;
                        i += 1;
                        j += 1;
                    }
                },
                (Some(x), None) => {
                    out.push(x.clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    out.push(pending.take().unwrap());
                    j += 1;
                }
                (None, None) => break,
            }
        }
        out
    }

    pub fn make_monic(&self, v: &mut Vector) {
        if let Some(lc) = v.first().map(|t| t.coeff.clone()) {
            if !lc.is_one() {
                let inv = lc.inv().expect("nonzero lead");
                for t in v.iter_mut() {
                    t.coeff = &t.coeff * &inv;
                }
            }
        }
    }
}

pub(crate) fn poly_to_vector(p: &Polynomial, comp: usize) -> Vector {
    p.terms().iter().map(|(m, c)| Term { mono: m.clone(), comp, coeff: c.clone() }).collect()
}

/// Inverse of [`poly_to_vector`] for rank-one vectors.
pub(crate) fn vector_to_poly(ring: &Ring, v: &[Term]) -> Polynomial {
    Polynomial::from_terms(ring, v.iter().map(|t| (t.mono.clone(), t.coeff.clone())).collect())
}

/// Leading-term index used for divisor lookups.
struct Lead {
    mono: Monomial,
    comp: usize,
    mask: u64,
}

impl Lead {
    fn of(v: &[Term]) -> Lead {
        let t = &v[0];
        Lead { mono: t.mono.clone(), comp: t.comp, mask: t.mono.support_mask() }
    }

    #[inline]
    fn divides(&self, m: &Monomial, comp: usize, mask: u64) -> bool {
        self.comp == comp && self.mask & !mask == 0 && self.mono.divides(m)
    }
}

/// Normal form machinery against a fixed list of monic vectors.
pub(crate) struct Reducer<'a> {
    order: &'a ModuleOrder,
    basis: Vec<&'a [Term]>,
    leads: Vec<Lead>,
}

impl<'a> Reducer<'a> {
    pub fn new(order: &'a ModuleOrder, basis: &'a [Vector]) -> Reducer<'a> {
        let basis: Vec<&[Term]> = basis.iter().filter(|v| !v.is_empty()).map(|v| v.as_slice()).collect();
        let leads = basis.iter().map(|v| Lead::of(v)).collect();
        Reducer { order, basis, leads }
    }

    fn find(&self, t: &Term) -> Option<usize> {
        let mask = t.mono.support_mask();
        self.leads.iter().position(|l| l.divides(&t.mono, t.comp, mask))
    }

    /// Full reduction. With `upper_only`, stops at the first term outside the
    /// upper block and returns the rest untouched.
    pub fn reduce(&self, v: Vector, upper_only: bool) -> Vector {
        self.reduce_with_sugar(v, 0, &[], upper_only).0
    }

    fn reduce_with_sugar(&self, mut v: Vector, mut sugar: i64, sugars: &[i64], upper_only: bool) -> (Vector, i64) {
        let mut rem: Vector = Vec::new();
        let mut pos = 0usize;
        loop {
            if pos >= v.len() {
                break;
            }
            let t = &v[pos];
            if upper_only && !self.order.in_upper_block(t.comp) {
                rem.extend(v.drain(pos..));
                break;
            }
            match self.find(t) {
                Some(k) => {
                    let g = self.basis[k];
                    let m = self.leads[k].mono.quotient_of(&t.mono);
                    if let Some(s) = sugars.get(k) {
                        sugar = sugar.max(s + m.degree() as i64);
                    }
                    let c = if g[0].coeff.is_one() {
                        t.coeff.clone()
                    } else {
                        &t.coeff * &g[0].coeff.inv().expect("nonzero lead")
                    };
                    v = self.order.sub_scaled_tail(&v[pos + 1..], &c, &m, &g[1..]);
                    pos = 0;
                }
                None => {
                    rem.push(v[pos].clone());
                    pos += 1;
                }
            }
        }
        (rem, sugar)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct GbOptions {
    /// Discard elements whose leading term lies outside the upper block.
    pub drop_lower_leads: bool,
    /// Record which input generators are minimal (homogeneous input only).
    pub mingens: bool,
}

#[derive(Debug, Clone)]
pub(crate) struct GbOutput {
    /// Reduced, monic, sorted ascending by leading term.
    pub basis: Vec<Vector>,
    /// Indices of input generators forming a minimal generating set.
    pub mingens: Vec<usize>,
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: usize,
    sugar: i64,
}

struct Element {
    vec: Vector,
    lead: Lead,
    sugar: i64,
    redundant: bool,
}

/// Computes a reduced Gröbner basis of the submodule spanned by `gens`.
pub(crate) fn groebner(order: &ModuleOrder, gens: &[Vector], opts: GbOptions) -> GbOutput {
    let weights = order.ring.weights().to_vec();
    let single_component = order.twists.len() == 1;

    // queue of input generators, by sugar then index
    let mut pending_gens: Vec<(i64, usize)> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_empty())
        .map(|(k, g)| (order.vector_degree(g).unwrap_or(0), k))
        .collect();
    pending_gens.sort();
    let mut next_gen = 0usize;

    let mut elems: Vec<Element> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut mingens = Vec::new();
    let mut unit_found = false;

    loop {
        // choose the next pair or generator: minimal sugar, pairs first
        let best_pair = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| order.compare(&a.lcm, a.comp, &b.lcm, b.comp))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, p)| (k, p.sugar));
        let gen_sugar = pending_gens.get(next_gen).map(|g| g.0);
        let take_pair = match (best_pair, gen_sugar) {
            (None, None) => break,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some((_, ps)), Some(gs)) => ps <= gs,
        };

        let (candidate, sugar, source) = if take_pair {
            let (k, _) = best_pair.unwrap();
            let p = pairs.swap_remove(k);
            let (a, b) = (&elems[p.i], &elems[p.j]);
            let ma = a.lead.mono.quotient_of(&p.lcm);
            let mb = b.lead.mono.quotient_of(&p.lcm);
            let sa: Vector = a.vec.iter().map(|t| Term { mono: t.mono.mul(&ma), comp: t.comp, coeff: t.coeff.clone() }).collect();
            let one = order.ring.field().one();
            let s = order.sub_scaled_tail(&sa[1..], &one, &mb, &b.vec[1..]);
            let mut s = s;
            // the merge skipped the cancelled leads; restore order invariants
            if s.windows(2).any(|w| order.cmp_terms(&w[0], &w[1]) != Ordering::Greater) {
                s = order.canonicalize(s);
            }
            (s, p.sugar, None)
        } else {
            let (gs, idx) = pending_gens[next_gen];
            next_gen += 1;
            (order.canonicalize(gens[idx].clone()), gs, Some(idx))
        };

        if unit_found {
            continue;
        }

        let basis_vecs: Vec<&[Term]> = elems.iter().map(|e| e.vec.as_slice()).collect();
        let leads: Vec<Lead> = elems.iter().map(|e| Lead::of(&e.vec)).collect();
        let sugars: Vec<i64> = elems.iter().map(|e| e.sugar).collect();
        let reducer = Reducer { order, basis: basis_vecs, leads };
        let (mut h, hsugar) = reducer.reduce_with_sugar(candidate, sugar, &sugars, false);
        if h.is_empty() {
            continue;
        }
        if let Some(idx) = source {
            mingens.push(idx);
        }
        order.make_monic(&mut h);
        let lead = Lead::of(&h);
        if opts.drop_lower_leads && !order.in_upper_block(lead.comp) {
            continue;
        }
        if single_component && lead.mono.is_one() {
            unit_found = true;
        }

        // Gebauer-Moeller update
        let hidx = elems.len();
        let hmono = lead.mono.clone();
        let hcomp = lead.comp;
        pairs.retain(|p| {
            if p.comp != hcomp || !hmono.divides(&p.lcm) {
                return true;
            }
            let l1 = elems[p.i].lead.mono.lcm(&hmono, &weights);
            let l2 = elems[p.j].lead.mono.lcm(&hmono, &weights);
            l1 == p.lcm || l2 == p.lcm
        });

        let mut new_pairs: Vec<(usize, Monomial, bool)> = Vec::new();
        for (k, e) in elems.iter().enumerate() {
            if e.redundant || e.lead.comp != hcomp {
                continue;
            }
            let l = e.lead.mono.lcm(&hmono, &weights);
            let coprime = single_component && e.lead.mono.is_coprime(&hmono);
            new_pairs.push((k, l, coprime));
        }
        // chain criterion among the new pairs: keep one per minimal lcm
        let mut keep = vec![true; new_pairs.len()];
        for a in 0..new_pairs.len() {
            for b in 0..new_pairs.len() {
                if a == b || !keep[b] {
                    continue;
                }
                let (la, lb) = (&new_pairs[a].1, &new_pairs[b].1);
                if lb.divides(la) && (lb != la || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        for (k, (i, l, coprime)) in new_pairs.into_iter().enumerate() {
            if !keep[k] || coprime {
                continue;
            }
            let e = &elems[i];
            let s1 = e.sugar + (l.degree() - e.lead.mono.degree()) as i64;
            let s2 = hsugar + (l.degree() - hmono.degree()) as i64;
            pairs.push(Pair { i, j: hidx, lcm: l, comp: hcomp, sugar: s1.max(s2) });
        }

        for e in elems.iter_mut() {
            if !e.redundant && e.lead.comp == hcomp && hmono.divides(&e.lead.mono) {
                e.redundant = true;
            }
        }
        elems.push(Element { vec: h, lead, sugar: hsugar, redundant: false });
    }

    let basis = interreduce(order, elems.into_iter().map(|e| e.vec).collect());
    GbOutput { basis, mingens: if opts.mingens { mingens } else { Vec::new() } }
}

/// Removes elements with divisible leads, tail-reduces, normalizes and sorts.
pub(crate) fn interreduce(order: &ModuleOrder, vecs: Vec<Vector>) -> Vec<Vector> {
    let mut vecs: Vec<Vector> = vecs.into_iter().filter(|v| !v.is_empty()).collect();
    vecs.sort_by(|a, b| order.cmp_terms(&a[0], &b[0]));
    let mut kept: Vec<Vector> = Vec::new();
    for v in vecs {
        let lead = Lead::of(&v);
        let mask = lead.mask;
        if kept.iter().any(|k| Lead::of(k).divides(&lead.mono, lead.comp, mask)) {
            continue;
        }
        kept.push(v);
    }
    let mut out = Vec::with_capacity(kept.len());
    for k in 0..kept.len() {
        let others: Vec<Vector> = kept.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, v)| v.clone()).collect();
        let red = Reducer::new(order, &others);
        let mut v = kept[k].clone();
        let head = v.remove(0);
        let mut tail = red.reduce(v, false);
        tail.insert(0, head);
        order.make_monic(&mut tail);
        out.push(tail);
    }
    out
}

/// Checks that every S-vector of `basis` reduces to zero.
pub(crate) fn is_groebner_basis(order: &ModuleOrder, basis: &[Vector]) -> bool {
    let weights = order.ring.weights();
    let red = Reducer::new(order, basis);
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (a, b) = (&basis[i], &basis[j]);
            if a.is_empty() || b.is_empty() || a[0].comp != b[0].comp {
                continue;
            }
            let l = a[0].mono.lcm(&b[0].mono, weights);
            let ma = a[0].mono.quotient_of(&l);
            let mb = b[0].mono.quotient_of(&l);
            let inva = a[0].coeff.inv().unwrap();
            let sa: Vector = a.iter().map(|t| Term { mono: t.mono.mul(&ma), comp: t.comp, coeff: &t.coeff * &inva }).collect();
            let c = b[0].coeff.inv().unwrap();
            let s = order.canonicalize(order.sub_scaled_tail(&sa[1..], &c, &mb, &b[1..]));
            if !red.reduce(s, false).is_empty() {
                return false;
            }
        }
    }
    true
}
