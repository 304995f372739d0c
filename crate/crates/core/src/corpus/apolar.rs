//! Artinian Gorenstein ideals from inverse systems: the annihilator of a
//! form under contraction.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::rings::{solve_affine, Field, Monomial, Polynomial, Ring};

/// Forms of degree ≤ maxdeg killing F under contraction, together with every
/// monomial of degree deg F + 1.
pub fn apolar_annihilator(form: &Polynomial, maxdeg: u32) -> Result<Ideal> {
    if form.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let s = form.homogeneous_degree().ok_or_else(|| Error::Inhomogeneous(form.to_string()))?;
    if s > maxdeg {
        return Err(Error::PrecondFailed(format!("deg F = {s} exceeds maxdeg = {maxdeg}")));
    }
    let ring = form.ring().clone();
    let field = ring.field();
    let coeffs: HashMap<&[u16], _> = form.terms().iter().map(|(m, c)| (m.exponents(), c)).collect();
    let mut gens = Vec::new();
    for t in 1..=s {
        let sources = ring.monomials_of_degree(t);
        let targets = ring.monomials_of_degree(s - t);
        // row γ: Σ_α p_α · coeff(F, x^{α+γ}) = 0
        let rows: Vec<Vec<_>> = targets
            .iter()
            .map(|gamma| {
                sources
                    .iter()
                    .map(|alpha| {
                        let sum = alpha.mul(gamma);
                        coeffs.get(sum.exponents()).map_or_else(|| field.zero(), |c| (*c).clone())
                    })
                    .collect()
            })
            .collect();
        let zeros = vec![field.zero(); rows.len()];
        let (_, kernel) = solve_affine(field, &rows, &zeros, sources.len()).expect("homogeneous systems are solvable");
        for v in kernel {
            let terms: Vec<(Monomial, _)> =
                sources.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c)).collect();
            gens.push(Polynomial::from_terms(&ring, terms));
        }
    }
    for m in ring.monomials_of_degree(s + 1) {
        gens.push(Polynomial::monomial(&ring, m, field.one()));
    }
    Ideal::new(&ring, gens)
}

/// Dense random form of degree `deg` with coefficients drawn from a seeded
/// generator: uniform residues over a prime field, integers in [-9, 9] over ℚ.
pub fn random_form(ring: &Ring, deg: u32, seed: u64) -> Polynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = ring.field();
    let terms = ring
        .monomials_of_degree(deg)
        .into_iter()
        .map(|m| {
            let c = match field {
                Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
                Field::Rational => field.from_i64(rng.gen_range(-9..=9)),
            };
            (m, c)
        })
        .filter(|(_, c)| !c.is_zero())
        .collect();
    Polynomial::from_terms(ring, terms)
}
