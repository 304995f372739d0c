use gorlink::groebner::is_groebner_basis;
use gorlink::rings::{Field, Monomial, PolyRing, Polynomial, Ring, RingExt};
use gorlink::{Error, Ideal};

fn xyz(field: Field) -> (Ring, Polynomial, Polynomial, Polynomial) {
    let r = PolyRing::new(&["x", "y", "z"], field).unwrap();
    let (x, y, z) = (r.var(0), r.var(1), r.var(2));
    (r, x, y, z)
}

fn ideal(r: &Ring, gens: &[Polynomial]) -> Ideal {
    Ideal::new(r, gens.to_vec()).unwrap()
}

/// Textbook Buchberger without criteria, followed by reduction; an oracle
/// independent of the engine.
fn naive_reduced_gb(gens: &[Polynomial]) -> Vec<Polynomial> {
    fn divide(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
        let ring = f.ring().clone();
        let mut p = f.clone();
        let mut rem = Polynomial::zero(&ring);
        while let Some(lm) = p.leading_monomial().cloned() {
            let lc = p.leading_coefficient().unwrap().clone();
            let hit = basis.iter().find(|g| g.leading_monomial().unwrap().divides(&lm));
            match hit {
                Some(g) => {
                    let q = g.leading_monomial().unwrap().quotient_of(&lm);
                    let c = &lc * &g.leading_coefficient().unwrap().inv().unwrap();
                    p = &p - &g.mul_term(&q, &c);
                }
                None => {
                    let t = Polynomial::monomial(&ring, lm, lc);
                    rem = &rem + &t;
                    p = &p - &t;
                }
            }
        }
        rem
    }
    let mut g: Vec<Polynomial> = gens.iter().filter(|p| !p.is_zero()).cloned().collect();
    loop {
        let mut added = false;
        let snapshot = g.clone();
        for i in 0..snapshot.len() {
            for j in i + 1..snapshot.len() {
                let (a, b) = (&snapshot[i], &snapshot[j]);
                let (la, lb) = (a.leading_monomial().unwrap(), b.leading_monomial().unwrap());
                let l = la.lcm(lb, a.ring().weights());
                let sa = a.mul_term(&la.quotient_of(&l), &a.leading_coefficient().unwrap().inv().unwrap());
                let sb = b.mul_term(&lb.quotient_of(&l), &b.leading_coefficient().unwrap().inv().unwrap());
                let r = divide(&(&sa - &sb), &g);
                if !r.is_zero() {
                    g.push(r);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    // minimalize and reduce
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (k, p) in g.iter().enumerate() {
        let lm = p.leading_monomial().unwrap();
        let dominated = g.iter().enumerate().any(|(j, q)| {
            let lq = q.leading_monomial().unwrap();
            j != k && lq.divides(lm) && (lq != lm || j < k)
        });
        if !dominated {
            minimal.push(p.monic());
        }
    }
    let mut reduced: Vec<Polynomial> = (0..minimal.len())
        .map(|k| {
            let others: Vec<Polynomial> = minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p.clone()).collect();
            divide(&minimal[k], &others).monic()
        })
        .collect();
    let ring = gens[0].ring().clone();
    reduced.sort_by(|a, b| ring.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    reduced
}

#[test]
fn principal_ideal_basis() {
    let (r, x, _, _) = xyz(Field::Rational);
    assert_eq!(ideal(&r, std::slice::from_ref(&x)).groebner_basis(), &[x]);
}

#[test]
fn coprime_leads_are_already_a_basis() {
    let (r, x, y, z) = xyz(Field::Rational);
    let b1 = &x.pow(2) - &z.pow(2);
    let b2 = &y.pow(2) - &z.pow(2);
    let gb = ideal(&r, &[b1.clone(), b2.clone()]).groebner_basis().to_vec();
    assert_eq!(gb.len(), 2);
    assert!(gb.contains(&b1) && gb.contains(&b2));
}

#[test]
fn twisted_cubic_like_basis_matches_textbook_buchberger() {
    for field in [Field::Rational, Field::Prime(32003)] {
        let (r, x, y, z) = xyz(field);
        let gens = [&(&x * &y) - &z.pow(2), &x.pow(2) - &(&y * &z)];
        let gb = ideal(&r, &gens).groebner_basis().to_vec();
        assert_eq!(gb, naive_reduced_gb(&gens));
        // the S-pair contributes y^2 z - x z^2
        let s = &(&y.pow(2) * &z) - &(&x * &z.pow(2));
        assert!(gb.iter().any(|g| g == &s || g == &-&s));
        assert!(is_groebner_basis(&gb));
    }
}

#[test]
fn random_ideals_match_textbook_buchberger() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let (r, _, _, _) = xyz(Field::Prime(101));
    for _ in 0..25 {
        let mut gens = Vec::new();
        for _ in 0..rng.gen_range(2..4) {
            let d = rng.gen_range(1..4u32);
            let mut terms: Vec<(Monomial, _)> = Vec::new();
            for m in r.monomials_of_degree(d) {
                if rng.gen_bool(0.4) {
                    terms.push((m, r.scalar(rng.gen_range(-5..6))));
                }
            }
            gens.push(Polynomial::from_terms(&r, terms));
        }
        if gens.iter().all(|g| g.is_zero()) {
            continue;
        }
        let gb = ideal(&r, &gens).groebner_basis().to_vec();
        assert_eq!(gb, naive_reduced_gb(&gens), "generators {gens:?}");
    }
}

#[test]
fn normal_forms() {
    let (r, x, y, z) = xyz(Field::Rational);
    assert!(ideal(&r, std::slice::from_ref(&x)).normal_form(&x.pow(2)).unwrap().is_zero());
    let b = ideal(&r, &[&x.pow(2) - &z.pow(2), &y.pow(2) - &z.pow(2)]);
    assert_eq!(b.normal_form(&(&x * &y)).unwrap(), &x * &y);
    let p = ideal(&r, &[&x.pow(2) - &z.pow(2)]);
    assert_eq!(p.normal_form(&x.pow(3)).unwrap(), &x * &z.pow(2));
    let f = &(&x.pow(3) * &y) + &z.pow(4);
    let nf = b.normal_form(&f).unwrap();
    assert_eq!(b.normal_form(&nf).unwrap(), nf);
    let other = PolyRing::new(&["u"], Field::Rational).unwrap();
    assert_eq!(b.normal_form(&other.var(0)), Err(Error::RingMismatch));
}

#[test]
fn ideal_equality() {
    let (r, x, y, _) = xyz(Field::Rational);
    assert!(ideal(&r, &[x.clone(), y.clone()]).equals(&ideal(&r, &[y.clone(), x.clone()])));
    assert!(!ideal(&r, std::slice::from_ref(&x)).equals(&ideal(&r, &[x.pow(2)])));
}

fn example_b(r: &Ring, x: &Polynomial, y: &Polynomial, z: &Polynomial) -> Ideal {
    let _ = r;
    ideal(r, &[&x.pow(2) - &z.pow(2), &y.pow(2) - &z.pow(2)])
}

#[test]
fn colon_examples() {
    let (r, x, y, z) = xyz(Field::Rational);
    let q = ideal(&r, &[x.pow(2)]).colon(&ideal(&r, std::slice::from_ref(&x))).unwrap();
    assert!(q.equals(&ideal(&r, std::slice::from_ref(&x))));

    let b = example_b(&r, &x, &y, &z);
    let zd = &(&(&x * &y) * &z) + &z.pow(3);
    let bq = b.quotient_by(&zd).unwrap();
    assert!(b.is_subset_of(&bq).unwrap());
    assert!(!bq.is_subset_of(&b).unwrap());

    let c = b.add_generators(&[z.pow(2)]).unwrap();
    let m = ideal(&r, &[x.clone(), y.clone(), z.clone()]);
    let j = c.colon(&m).unwrap();
    let expected = b.add_generators(&[z.pow(2), &(&x * &y) * &z]).unwrap();
    assert!(j.equals(&expected));

    assert_eq!(b.colon(&Ideal::zero(&r)).unwrap_err(), Error::ZeroIdeal);
    assert!(b.colon(&Ideal::unit(&r)).unwrap().equals(&b));
    assert!(b.colon(&ideal(&r, &[&x.pow(2) - &z.pow(2)])).unwrap().is_unit());
}

/// Quotient I : (f) from the first components of the syzygies of (f, g_1, ...).
fn colon_by_syzygies(i: &Ideal, f: &Polynomial) -> Ideal {
    use gorlink::homological::{GradedFreeModule, GradedMatrix};
    let ring = i.ring().clone();
    let mut row = vec![f.clone()];
    row.extend(i.gens().iter().cloned());
    let degs: Vec<i64> = row.iter().map(|p| p.homogeneous_degree().unwrap() as i64).collect();
    let m = GradedMatrix::new(
        GradedFreeModule::new(&ring, degs),
        GradedFreeModule::new(&ring, vec![0]),
        vec![row],
    )
    .unwrap();
    let syz = m.kernel();
    let firsts: Vec<Polynomial> = (0..syz.ncols()).map(|c| syz.entry(0, c).clone()).collect();
    Ideal::new(&ring, firsts).unwrap()
}

#[test]
fn colon_agrees_with_syzygy_route() {
    let (r, x, y, z) = xyz(Field::Prime(32003));
    let b = example_b(&r, &x, &y, &z);
    let cases = [
        (b.clone(), &(&(&x * &y) * &z) + &z.pow(3)),
        (b.add_generators(&[z.pow(2)]).unwrap(), x.clone()),
        (b.add_generators(&[z.pow(2)]).unwrap(), &(&x * &y) * &z),
        (ideal(&r, &[&x * &y, &y * &z]), y.clone()),
    ];
    for (i, f) in cases {
        assert!(i.quotient_by(&f).unwrap().equals(&colon_by_syzygies(&i, &f)), "{i} : {f}");
    }
}

#[test]
fn nonzerodivisors() {
    let (r, x, y, z) = xyz(Field::Rational);
    let b = example_b(&r, &x, &y, &z);
    assert!(b.is_nonzerodivisor(&z.pow(2)).unwrap());
    assert!(!b.is_nonzerodivisor(&(&(&(&x * &y) * &z) + &z.pow(3))).unwrap());
    assert!(b.is_nonzerodivisor(&r.constant(1)).unwrap());
    assert_eq!(b.is_nonzerodivisor(&Polynomial::zero(&r)), Err(Error::ZeroPolynomial));
}

fn example_i(r: &Ring, x: &Polynomial, y: &Polynomial, z: &Polynomial) -> Ideal {
    ideal(
        r,
        &[
            &x.pow(2) - &z.pow(2),
            &y.pow(2) - &z.pow(2),
            x * z,
            y * z,
            &(x * y) + &z.pow(2).scale_int(5),
        ],
    )
}

#[test]
fn grades() {
    let (r, x, y, z) = xyz(Field::Rational);
    assert_eq!(ideal(&r, &[x.clone(), y.clone(), z.clone()]).grade(), 3);
    assert_eq!(example_b(&r, &x, &y, &z).grade(), 2);
    assert_eq!(example_i(&r, &x, &y, &z).grade(), 3);
    assert_eq!(Ideal::zero(&r).grade(), 0);
    assert_eq!(Ideal::unit(&r).grade(), 3);
}

#[test]
fn hilbert_functions() {
    let (r, x, y, z) = xyz(Field::Rational);
    let zero = Ideal::zero(&r).hilbert().values(6);
    assert_eq!(zero, (0..7).map(|j| (j + 1) * (j + 2) / 2).collect::<Vec<i64>>());
    assert_eq!(example_b(&r, &x, &y, &z).hilbert().values(5), vec![1, 3, 4, 4, 4, 4]);
    let i = example_i(&r, &x, &y, &z);
    assert_eq!(i.hilbert().h_vector(), Some(vec![1, 3, 1]));
    // independent count: standard monomials under the Gröbner basis leads
    let leads: Vec<Monomial> = i.groebner_basis().iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
    for d in 0..5 {
        let count = r.monomials_of_degree(d).iter().filter(|m| !leads.iter().any(|l| l.divides(m))).count() as i64;
        assert_eq!(i.hilbert().value(d as i64), count);
    }
}

#[test]
fn hilbert_function_is_eventually_polynomial() {
    let (r, x, y, z) = xyz(Field::Rational);
    let i = ideal(&r, &[&x * &y]);
    let h = i.hilbert();
    assert_eq!(h.dimension(), 2);
    let v = h.values(12);
    // dimension 2: first differences constant from some point on
    let diffs: Vec<i64> = v.windows(2).map(|w| w[1] - w[0]).collect();
    assert!(diffs[5..].windows(2).all(|w| w[0] == w[1]));
    let _ = z;
}

#[test]
fn field_independence_of_invariants() {
    for field in [Field::Rational, Field::Prime(32003)] {
        let (r, x, y, z) = xyz(field);
        let i = example_i(&r, &x, &y, &z);
        assert_eq!(i.grade(), 3);
        assert_eq!(i.hilbert().h_vector(), Some(vec![1, 3, 1]));
    }
}

#[test]
fn minimal_generators_drop_redundancy() {
    let (r, x, y, z) = xyz(Field::Rational);
    let i = ideal(&r, &[x.clone(), &x * &y, y.clone(), &x + &y, z.pow(2)]);
    assert_eq!(i.num_minimal_generators(), 3);
}
