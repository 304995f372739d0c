use proptest::prelude::*;

use gorlink::corpus::{apolar_annihilator, random_form, run_selected, CorpusConfig};
use gorlink::groebner::is_groebner_basis;
use gorlink::homological::{resolve, verify_resolution, BettiTable};
use gorlink::liaison::{choose_f, direct_link};
use gorlink::{Field, Ideal, PolyRing, Polynomial, Ring, RingExt};

const GF: Field = Field::Prime(32003);

fn ring() -> Ring {
    PolyRing::new(&["x", "y", "z"], GF).unwrap()
}

/// A homogeneous form of degree `deg` from (exponent-index, coefficient) picks.
fn form(r: &Ring, deg: u32, picks: &[(usize, i64)]) -> Polynomial {
    let mons = r.monomials_of_degree(deg);
    let terms = picks.iter().map(|(i, c)| (mons[i % mons.len()].clone(), r.scalar(*c))).collect();
    Polynomial::from_terms(r, terms)
}

fn ideal_strategy() -> impl Strategy<Value = Vec<(u32, Vec<(usize, i64)>)>> {
    proptest::collection::vec((1u32..4, proptest::collection::vec((0usize..10, -20i64..20), 1..4)), 1..4)
}

fn build(r: &Ring, spec: &[(u32, Vec<(usize, i64)>)]) -> Option<Ideal> {
    let gens: Vec<Polynomial> = spec.iter().map(|(d, p)| form(r, *d, p)).filter(|p| !p.is_zero()).collect();
    if gens.is_empty() {
        return None;
    }
    Ideal::new(r, gens).ok()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn groebner_s_pairs_reduce_to_zero(spec in ideal_strategy()) {
        let r = ring();
        if let Some(i) = build(&r, &spec) {
            prop_assert!(is_groebner_basis(i.groebner_basis()));
            for g in i.gens() {
                prop_assert!(i.normal_form(g).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn normal_form_is_idempotent(spec in ideal_strategy(), deg in 1u32..5, picks in proptest::collection::vec((0usize..15, -20i64..20), 1..6)) {
        let r = ring();
        if let Some(i) = build(&r, &spec) {
            let p = form(&r, deg, &picks);
            let nf = i.normal_form(&p).unwrap();
            prop_assert_eq!(i.normal_form(&nf).unwrap(), nf.clone());
            prop_assert!(i.contains(&(&p - &nf)).unwrap());
        }
    }

    #[test]
    fn resolutions_are_exact_complexes(spec in ideal_strategy()) {
        let r = ring();
        if let Some(i) = build(&r, &spec) {
            let res = resolve(&i).unwrap();
            prop_assert!(res.check_square_zero().is_ok());
            prop_assert!(res.is_minimal());
            let check = verify_resolution(&res, &i);
            prop_assert!(check.ok, "{:?}", check.witness);
        }
    }

    #[test]
    fn apolar_quotients_are_gorenstein(deg in 1u32..4, seed in 0u64..500) {
        let r = ring();
        let f = random_form(&r, deg, seed);
        prop_assume!(!f.is_zero());
        let ann = apolar_annihilator(&f, deg).unwrap();
        let betti = BettiTable::from_complex(&resolve(&ann).unwrap()).unwrap();
        prop_assert!(betti.is_gorenstein_symmetric());
        prop_assert_eq!(betti.ranks().last().copied(), Some(1));
        let h = ann.hilbert().h_vector().unwrap();
        let rev: Vec<i64> = h.iter().rev().copied().collect();
        prop_assert_eq!(h, rev);
    }

    #[test]
    fn linking_twice_returns_the_ideal(a in 1u16..4, b in 1u16..4, c in 1u16..4, spec in ideal_strategy()) {
        let r = ring();
        let ci = Ideal::new(&r, vec![r.var(0).pow(a as u32), r.var(1).pow(b as u32), r.var(2).pow(c as u32)]).unwrap();
        let mut gens = ci.gens().to_vec();
        if let Some(extra) = build(&r, &spec) {
            gens.extend(extra.gens().iter().cloned());
        }
        let i = Ideal::new(&r, gens).unwrap();
        prop_assume!(!i.is_unit() && !i.equals(&ci));
        let (j, first) = direct_link(&ci, &i).unwrap();
        let (back, second) = direct_link(&ci, &j).unwrap();
        prop_assert!(first.is_valid() && second.is_valid());
        prop_assert!(back.equals(&i));
    }

    #[test]
    fn seeded_choices_are_reproducible(seed in 0u64..10_000) {
        let r = ring();
        prop_assert_eq!(random_form(&r, 3, seed), random_form(&r, 3, seed));
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let b = Ideal::new(&r, vec![&x.pow(2) - &z.pow(2), &y.pow(2) - &z.pow(2)]).unwrap();
        let omega = &(&x * &y) * &z;
        let once = choose_f(&b, &z.pow(2), &omega, 1, 20, seed);
        let twice = choose_f(&b, &z.pow(2), &omega, 1, 20, seed);
        prop_assert_eq!(once.ok(), twice.ok());
    }
}

#[test]
fn corpus_reports_are_deterministic() {
    let filter = |n: &str| n == "small-pair" || n.starts_with("ci-g3") || n == "sally-n3";
    let config = CorpusConfig { field: GF, seed: 7 };
    let first = run_selected(&config, filter);
    let second = run_selected(&config, filter);
    assert!(first.passed(), "{:?}", first.failures());
    assert_eq!(first.without_timings(), second.without_timings());
}
