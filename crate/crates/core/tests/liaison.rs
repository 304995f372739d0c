use gorlink::liaison::{
    admissible_f, choose_f, direct_link, hilbert_identity_check, is_gorenstein, two_link_construct, BiliaisonData,
};
use gorlink::rings::{delete_row_col, determinant, Field, PolyMatrix, PolyRing, Polynomial, Ring, RingExt};
use gorlink::{Error, Ideal};

fn ring3(field: Field) -> Ring {
    PolyRing::new(&["x", "y", "z"], field).unwrap()
}

struct Ex33 {
    r: Ring,
    a: Ideal,
    b: Ideal,
    y: Polynomial,
    expected: Ideal,
}

fn ex33(field: Field) -> Ex33 {
    let r = ring3(field);
    let (x, y, z) = (r.var(0), r.var(1), r.var(2));
    let b = Ideal::new(&r, vec![&x.pow(2) - &z.pow(2), &y.pow(2) - &z.pow(2)]).unwrap();
    let a = Ideal::new(&r, vec![x.clone(), y.clone(), z.clone()]).unwrap();
    let expected = Ideal::new(
        &r,
        vec![&x.pow(2) - &z.pow(2), &y.pow(2) - &z.pow(2), &x * &z, &y * &z, &(&x * &y) + &z.pow(2).scale_int(5)],
    )
    .unwrap();
    Ex33 { y: z.pow(2), r, a, b, expected }
}

#[test]
fn first_link_of_the_small_example() {
    let ex = ex33(Field::Prime(32003));
    let (x, y, z) = (ex.r.var(0), ex.r.var(1), ex.r.var(2));
    let c = ex.b.add_generators(std::slice::from_ref(&ex.y)).unwrap();
    let (j, cert) = direct_link(&c, &ex.a).unwrap();
    let expected = ex.b.add_generators(&[z.pow(2), &(&x * &y) * &z]).unwrap();
    assert!(j.equals(&expected));
    assert!(cert.is_valid());
    assert!(j.num_minimal_generators() <= c.num_minimal_generators() + 1);
}

#[test]
fn second_link_of_the_small_example() {
    let ex = ex33(Field::Prime(32003));
    let (x, y, z) = (ex.r.var(0), ex.r.var(1), ex.r.var(2));
    let j = ex.b.add_generators(&[z.pow(2), &(&x * &y) * &z]).unwrap();
    let c = ex.b.add_generators(&[&(&(&x * &y) * &z) + &z.pow(3).scale_int(5)]).unwrap();
    let (i, cert) = direct_link(&c, &j).unwrap();
    assert!(i.equals(&ex.expected));
    assert!(cert.is_valid());
}

#[test]
fn self_link_is_rejected() {
    let ex = ex33(Field::Prime(32003));
    let c = ex.b.add_generators(std::slice::from_ref(&ex.y)).unwrap();
    assert!(matches!(direct_link(&c, &c), Err(Error::PrecondFailed(_))));
    assert!(matches!(direct_link(&ex.b, &ex.a), Err(Error::PrecondFailed(_))));
}

#[test]
fn gorenstein_detection() {
    let ex = ex33(Field::Prime(32003));
    assert!(is_gorenstein(&ex.b).unwrap());
    assert!(is_gorenstein(&ex.a).unwrap());
    assert!(is_gorenstein(&ex.expected).unwrap());
    let r = PolyRing::new(&["x", "y", "z", "w"], Field::Prime(32003)).unwrap();
    let (x, y, z, w) = (r.var(0), r.var(1), r.var(2), r.var(3));
    let two_lines = Ideal::new(&r, vec![&x * &z, &x * &w, &y * &z, &y * &w]).unwrap();
    assert_eq!(two_lines.grade(), 2);
    assert!(!is_gorenstein(&two_lines).unwrap());
}

#[test]
fn omega_of_the_small_example() {
    let ex = ex33(Field::Prime(32003));
    let data = BiliaisonData::new(&ex.a, &ex.b, &ex.y).unwrap();
    assert_eq!((data.g, data.u, data.v, data.d, data.e), (3, 4, 3, 1, 2));
    let (x, y, z) = (ex.r.var(0), ex.r.var(1), ex.r.var(2));
    let by = ex.b.add_generators(std::slice::from_ref(&ex.y)).unwrap();
    let xyz = &(&x * &y) * &z;
    // ω is a unit multiple of xyz modulo (𝔟, y)
    let omega = &data.omega.omega;
    assert_eq!(omega.homogeneous_degree(), Some(3));
    assert!(by.add_generators(std::slice::from_ref(omega)).unwrap().equals(&by.add_generators(std::slice::from_ref(&xyz)).unwrap()));
    assert!(data.omega.mu.commutes());
    // raw ≡ ω + q·y mod 𝔟
    let diff = &(&data.omega.raw - omega) - &(&data.omega.q * &ex.y);
    assert!(ex.b.contains(&diff).unwrap());
}

#[test]
fn omega_of_a_codimension_two_pair() {
    let r = PolyRing::new(&["x", "y"], Field::Prime(32003)).unwrap();
    let (x, y) = (r.var(0), r.var(1));
    let a = Ideal::new(&r, vec![x.clone(), y.clone()]).unwrap();
    let b = Ideal::new(&r, vec![x.pow(3)]).unwrap();
    let data = BiliaisonData::new(&a, &b, &y.pow(2)).unwrap();
    assert_eq!((data.u, data.v, data.d), (3, 2, 1));
    let by = b.add_generators(&[y.pow(2)]).unwrap();
    let residual = by.colon(&a).unwrap();
    assert!(by.add_generators(std::slice::from_ref(&data.omega.omega)).unwrap().equals(&residual));
    assert_eq!(data.omega.omega.homogeneous_degree(), Some(3));

    // u = 1 < v = 2
    let low = Ideal::new(&r, vec![x.clone()]).unwrap();
    assert!(matches!(BiliaisonData::new(&a, &low, &y), Err(Error::PrecondFailed(_))));

    let square = Ideal::new(&r, vec![x.pow(2)]).unwrap();
    let flat = BiliaisonData::new(&a, &square, &y).unwrap();
    assert_eq!(flat.d, 0);
}

#[test]
fn f_search_on_the_small_example() {
    let ex = ex33(Field::Prime(32003));
    let z = ex.r.var(2);
    let data = BiliaisonData::new(&ex.a, &ex.b, &ex.y).unwrap();
    let omega = data.omega.omega.clone();
    assert!(admissible_f(&ex.b, &ex.y, &omega, &z.scale_int(5)).unwrap());
    assert!(!admissible_f(&ex.b, &ex.y, &omega, &z).unwrap());
    assert!(matches!(data.clone().with_f(&z), Err(Error::NotNzd(_))));
    let f = choose_f(&ex.b, &ex.y, &omega, 1, 20, 7).unwrap();
    assert!(admissible_f(&ex.b, &ex.y, &omega, &f).unwrap());
    assert_eq!(f, choose_f(&ex.b, &ex.y, &omega, 1, 20, 7).unwrap());
}

#[test]
fn zero_f_is_tried_first() {
    let r = PolyRing::new(&["x", "y"], Field::Prime(32003)).unwrap();
    let (x, y) = (r.var(0), r.var(1));
    let b = Ideal::new(&r, vec![x.pow(2)]).unwrap();
    let f = choose_f(&b, &x, &y, 0, 5, 1).unwrap();
    assert!(f.is_zero());
}

#[test]
fn search_exhaustion_is_reported() {
    let r = PolyRing::new(&["x", "y"], Field::Prime(32003)).unwrap();
    let x = r.var(0);
    let b = Ideal::new(&r, vec![x.pow(2)]).unwrap();
    match choose_f(&b, &x, &x, 0, 3, 1) {
        Err(Error::SearchExhausted { trials, rejected }) => {
            assert_eq!(trials, 3);
            assert_eq!(rejected.len(), 3);
        }
        other => panic!("unexpected {other:?}"),
    }
}

fn run_small_example(field: Field) {
    let ex = ex33(field);
    let z = ex.r.var(2);
    let data = BiliaisonData::new(&ex.a, &ex.b, &ex.y).unwrap().with_f(&z.scale_int(5)).unwrap();
    let data = two_link_construct(data).unwrap();
    let i = data.ideal().unwrap();
    assert!(i.equals(&ex.expected));
    assert!(data.first_link.as_ref().unwrap().is_valid());
    assert!(data.second_link.as_ref().unwrap().is_valid());
    let check = hilbert_identity_check(&data).unwrap();
    assert!(check.holds, "{check:?}");
    assert_eq!(i.hilbert().h_vector().unwrap(), vec![1, 3, 1]);
    let formula = data.formula.as_ref().unwrap();
    assert!(formula.matches || formula.effective.is_some());
}

#[test]
fn small_example_end_to_end() {
    run_small_example(Field::Prime(32003));
}

#[test]
fn small_example_over_the_rationals() {
    run_small_example(Field::Rational);
}

#[test]
fn sally_chain_three_variables() {
    let r = PolyRing::new(&["x1", "x2", "x3"], Field::Prime(32003)).unwrap();
    let (x1, x2, x3) = (r.var(0), r.var(1), r.var(2));
    let a = Ideal::new(&r, vec![x1.clone(), x2.clone(), x3.clone()]).unwrap();
    let b = Ideal::new(&r, vec![&x1 * &x2, &x1.pow(2) - &x2.pow(2)]).unwrap();
    let target = &x2.pow(2) - &x3.pow(2);
    let data = BiliaisonData::new(&a, &b, &x3).unwrap().with_target_z(&target).unwrap();
    let data = two_link_construct(data).unwrap();
    let expected =
        Ideal::new(&r, vec![&x1 * &x2, &x1 * &x3, &x2 * &x3, &x1.pow(2) - &x3.pow(2), &x2.pow(2) - &x3.pow(2)]).unwrap();
    assert!(data.ideal().unwrap().equals(&expected));
    let middle = data.j.as_ref().unwrap();
    let square = Ideal::new(&r, vec![x1.pow(2), &x1 * &x2, x2.pow(2), x3.clone()]).unwrap();
    assert!(middle.equals(&square));
    assert!(hilbert_identity_check(&data).unwrap().holds);
}

fn generic(r: &Ring, n: usize) -> PolyMatrix {
    (0..n).map(|i| (0..n).map(|j| r.var(n * i + j)).collect()).collect()
}

#[test]
fn generic_three_by_three_minors() {
    let r = PolyRing::indexed("x", 9, Field::Prime(32003)).unwrap();
    let m = generic(&r, 3);
    let minor = |i: usize, j: usize| determinant(&r, &delete_row_col(&m, i, j)).unwrap();
    let all: Vec<Polynomial> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| minor(i, j)).collect();
    let expected = Ideal::new(&r, all).unwrap();
    let a = Ideal::new(&r, vec![r.var(0), r.var(1), r.var(3), r.var(4)]).unwrap();
    let b = Ideal::new(&r, vec![minor(0, 2), minor(1, 2), minor(2, 0), minor(2, 1), minor(2, 2)]).unwrap();
    let y = r.var(4);
    let data = BiliaisonData::new(&a, &b, &y).unwrap().with_target_z(&minor(0, 0)).unwrap();
    let data = two_link_construct(data).unwrap();
    let i = data.ideal().unwrap();
    assert!(i.equals(&expected));
    assert!(hilbert_identity_check(&data).unwrap().holds);
    // N11·I + 𝔟 = M11·𝔞 + 𝔟
    let lhs = expected.scale(&y).unwrap().sum(&b).unwrap();
    let rhs = a.scale(&minor(0, 0)).unwrap().sum(&b).unwrap();
    assert!(lhs.equals(&rhs));
}
