use gorlink::corpus::{
    apolar_annihilator, example_names, gen_ci_family, gen_extrasymmetric, gen_generic_minors, gen_sally, gen_small_pair,
    parse_field, parse_input, parse_polynomial, sally_units, sylvester_identity,
};
use gorlink::homological::{resolve, BettiTable};
use gorlink::liaison::is_gorenstein;
use gorlink::{Error, Field, Ideal, PolyRing, RingExt};

const GF: Field = Field::Prime(32003);

#[test]
fn parses_the_documented_example() {
    let doc = parse_input("field rational; ring x y z; ideal b = x^2 - z^2, y^2 - z^2").unwrap();
    assert_eq!(doc.field, Field::Rational);
    assert_eq!(doc.ring.names(), ["x", "y", "z"]);
    assert!(doc.polys.is_empty());
    assert_eq!(doc.ideals.len(), 1);
    let gens: Vec<String> = doc.ideal_gens("b").unwrap().iter().map(|p| p.to_string()).collect();
    assert_eq!(gens, ["x^2 - z^2", "y^2 - z^2"]);
}

#[test]
fn documents_round_trip() {
    let text = "field rational
        ring a b c
        degrees 1 1 2
        poly p = (a + b)^2 - 3/2*c   # continuation follows
        ideal i = p, a*b +
                  c, a^4";
    let doc = parse_input(text).unwrap();
    assert_eq!(doc.ring.weights(), [1, 1, 2]);
    let again = parse_input(&doc.render()).unwrap();
    assert_eq!(again, doc);
}

#[test]
fn missing_field_defaults_to_gf_32003() {
    let doc = parse_input("ring x y\nideal i = x*y").unwrap();
    assert_eq!(doc.field, GF);
}

#[test]
fn declared_polynomials_are_substituted() {
    let doc = parse_input("ring x y z\npoly q = x - y\nideal i = q^2, q*z").unwrap();
    let i = doc.ideal("i").unwrap().unwrap();
    let expected = parse_polynomial(&doc.ring, "x^2 - 2*x*y + y^2", &[]).unwrap();
    assert!(i.contains(&expected).unwrap());
}

#[test]
fn inhomogeneous_input_is_located() {
    let err = parse_input("ring x y\nideal i = x^2 + y").unwrap_err();
    match err {
        Error::Inhomogeneous(msg) => assert!(msg.contains("2:"), "{msg}"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn unknown_identifiers_are_located() {
    let err = parse_input("ring x y\n\nideal i = x, w").unwrap_err();
    match err {
        Error::UnknownIdentifier { name, line, column } => {
            assert_eq!(name, "w");
            assert_eq!((line, column), (3, 14));
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn malformed_input_is_a_parse_error() {
    for bad in ["ring x y\nideal i = x +", "ring x\nideal i = (x", "ideal i = x", "ring x\npoly x = x^2", "field gf 12"] {
        assert!(matches!(parse_input(bad), Err(Error::Parse { .. })), "{bad}");
    }
}

#[test]
fn fields_parse() {
    assert_eq!(parse_field("q").unwrap(), Field::Rational);
    assert_eq!(parse_field("gf:32003").unwrap(), GF);
    assert_eq!(parse_field("gf 7").unwrap(), Field::Prime(7));
    assert!(parse_field("gf:8").is_err());
    assert!(parse_field("reals").is_err());
}

#[test]
fn extrasymmetric_document_parses() {
    let text = "ring a b c d e f x y z
        ideal a = b^2 - a*d + x^2, b*c - a*e + x*y, c^2 - a*f + y^2, c*d - b*e + x*z, c*e - b*f + y*z,
                  e^2 - d*f + z^2, c*x - b*y + a*z, e*x - d*y + b*z, f*x - e*y + c*z";
    let doc = parse_input(text).unwrap();
    let a = doc.ideal("a").unwrap().unwrap();
    let generated = gen_extrasymmetric(GF, 1).unwrap();
    assert!(a.equals(&generated.family.a));
    assert!(generated.pfaffian_ideal().unwrap().equals(&a));
}

#[test]
fn small_pair_generator() {
    let fam = gen_small_pair(Field::Rational).unwrap();
    assert_eq!(fam.a.gens().len(), 3);
    assert_eq!(fam.b.gens().len(), 2);
    let data = fam.construct().unwrap();
    assert!(data.ideal().unwrap().equals(fam.expected.as_ref().unwrap()));
}

#[test]
fn ci_generator_rejects_bad_exponents() {
    // m_j = n_j with d = 0 would need n_g = 0
    assert!(matches!(gen_ci_family(GF, &[1, 1], &[1, 1, 1], 1), Err(Error::PrecondFailed(_))));
    assert!(matches!(gen_ci_family(GF, &[1], &[2, 1], 1), Err(Error::PrecondFailed(_))));
    assert!(matches!(gen_ci_family(GF, &[2, 2, 2], &[1, 1, 1], 1), Err(Error::PrecondFailed(_))));
}

#[test]
fn ci_generator_closed_form() {
    let ci = gen_ci_family(GF, &[3, 2], &[1, 1, 1], 4).unwrap();
    assert_eq!(ci.d, 2);
    let data = ci.family.construct().unwrap();
    let f = data.f.clone().unwrap();
    let i = data.ideal().unwrap();
    assert!(ci.expected_for(&f).unwrap().equals(i));
    assert!(is_gorenstein(i).unwrap());
}

#[test]
fn sally_generator() {
    for n in 3..=4 {
        let units = sally_units(GF, n, 1);
        assert_eq!(units.len(), n - 1);
        let fam = gen_sally(GF, &units).unwrap();
        let data = fam.construct().unwrap();
        let i = data.ideal().unwrap();
        assert!(i.equals(fam.expected.as_ref().unwrap()));
        assert_eq!(i.hilbert().h_vector().unwrap(), vec![1, n as i64, 1]);
    }
    assert!(gen_sally(GF, &[1]).is_err());
}

#[test]
fn generic_minors_generator() {
    let (ideal, fam) = gen_generic_minors(3, GF).unwrap();
    assert_eq!(ideal.num_minimal_generators(), 9);
    let fam = fam.unwrap();
    assert!(sylvester_identity(&fam).unwrap());
    let data = fam.construct().unwrap();
    assert!(data.ideal().unwrap().equals(&ideal));
}

#[test]
fn apolar_of_a_power_of_a_variable() {
    let r = PolyRing::indexed("x", 5, GF).unwrap();
    let ann = apolar_annihilator(&r.var(0).pow(3), 3).unwrap();
    let (x1, rest) = (r.var(0), &r.vars()[1..]);
    let mut gens = rest.to_vec();
    gens.push(x1.pow(4));
    assert!(ann.equals(&Ideal::new(&r, gens).unwrap()));
    assert_eq!(ann.hilbert().h_vector().unwrap(), vec![1, 1, 1, 1]);
}

#[test]
fn apolar_of_a_squarefree_monomial() {
    let r = PolyRing::indexed("x", 3, Field::Rational).unwrap();
    let f = &(&r.var(0) * &r.var(1)) * &r.var(2);
    let ann = apolar_annihilator(&f, 3).unwrap();
    let squares = Ideal::new(&r, r.vars().iter().map(|v| v.pow(2)).collect()).unwrap();
    assert!(ann.equals(&squares));
    assert_eq!(ann.hilbert().h_vector().unwrap(), vec![1, 3, 3, 1]);
    let betti = BettiTable::from_complex(&resolve(&ann).unwrap()).unwrap();
    assert!(betti.is_gorenstein_symmetric());
}

#[test]
fn apolar_rejects_bad_forms() {
    let r = PolyRing::indexed("x", 2, GF).unwrap();
    assert!(matches!(apolar_annihilator(&gorlink::Polynomial::zero(&r), 2), Err(Error::ZeroPolynomial)));
    assert!(matches!(apolar_annihilator(&(&r.var(0) + &r.var(1).pow(2)), 2), Err(Error::Inhomogeneous(_))));
    assert!(matches!(apolar_annihilator(&r.var(0).pow(3), 2), Err(Error::PrecondFailed(_))));
}

#[test]
fn example_names_are_stable() {
    let names = example_names();
    assert_eq!(names.len(), 13);
    assert!(names.windows(2).all(|w| w[0] < w[1]));
    assert!(names.iter().all(|n| !n.contains(char::is_whitespace)));
}
