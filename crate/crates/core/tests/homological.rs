use gorlink::homological::{
    is_null_homotopy, lift_chain_map, mapping_cone, matrix_lift, minimalize, null_homotopy, resolve, syzygies,
    verify_resolution, BettiTable, ChainComplex, ChainMap, GradedFreeModule, GradedMatrix,
};
use gorlink::rings::{delete_row_col, determinant, Field, PolyMatrix, PolyRing, Polynomial, Ring, RingExt};
use gorlink::{Error, Ideal};

fn ring(names: &[&str]) -> Ring {
    PolyRing::new(names, Field::Prime(32003)).unwrap()
}

fn row(r: &Ring, gens: &[Polynomial]) -> GradedMatrix {
    GradedMatrix::row_vector(r, gens).unwrap()
}

fn koszul2(r: &Ring, a: &Polynomial, b: &Polynomial) -> ChainComplex {
    let d1 = row(r, &[a.clone(), b.clone()]);
    let d2 = GradedMatrix::from_columns(d1.source().clone(), vec![vec![-b, a.clone()]], 0).unwrap();
    ChainComplex::new(GradedFreeModule::base(r), vec![d1, d2]).unwrap()
}

#[test]
fn koszul_syzygies() {
    let r = ring(&["x", "y", "z"]);
    let (x, y, z) = (r.var(0), r.var(1), r.var(2));
    let k = syzygies(&row(&r, &[x.clone(), y.clone()]));
    assert_eq!(k.ncols(), 1);
    let col = k.column(0);
    assert!(col == vec![-&y, x.clone()] || col == vec![y.clone(), -&x]);

    let (f, g) = (&x.pow(2) - &z.pow(2), &y.pow(2) - &z.pow(2));
    let k = syzygies(&row(&r, &[f.clone(), g.clone()]));
    assert_eq!(k.ncols(), 1);
    let col = k.column(0);
    assert!(col == vec![-&g, f.clone()] || col == vec![g.clone(), -&f]);

    let m = row(&r, &[x.clone(), y.clone(), z.clone()]);
    let k = syzygies(&m);
    assert_eq!(k.ncols(), 3);
    assert!(m.compose(&k).unwrap().is_zero());
    assert_eq!(k.source().degrees(), &[2, 2, 2]);
}

#[test]
fn resolution_of_two_variables() {
    let r = ring(&["x", "y", "z"]);
    let c = resolve(&Ideal::new(&r, vec![r.var(0), r.var(1)]).unwrap()).unwrap();
    assert_eq!(c.ranks(), vec![1, 2, 1]);
    assert_eq!(c.module(1).degrees(), &[1, 1]);
    assert_eq!(c.module(2).degrees(), &[2]);
    let b = BettiTable::from_complex(&c).unwrap();
    assert_eq!(b.ideal_regularity(), Some(1));
    assert_eq!(b.quotient_regularity(), Some(0));
    assert!(b.is_gorenstein_symmetric());
}

fn generic_matrix(r: &Ring, n: usize) -> PolyMatrix {
    (0..n).map(|i| (0..n).map(|j| r.var(n * i + j)).collect()).collect()
}

#[test]
fn submaximal_minors_of_generic_three_by_three() {
    let r = PolyRing::indexed("x", 9, Field::Prime(32003)).unwrap();
    let m = generic_matrix(&r, 3);
    let mut minors = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            minors.push(determinant(&r, &delete_row_col(&m, i, j)).unwrap());
        }
    }
    let i = Ideal::new(&r, minors).unwrap();
    let c = resolve(&i).unwrap();
    let b = BettiTable::from_complex(&c).unwrap();
    assert_eq!(b.ideal_ranks(), vec![9, 16, 9, 1]);
    assert_eq!(b.degrees(1), vec![2]);
    assert_eq!(b.degrees(2), vec![3]);
    assert_eq!(b.degrees(3), vec![4]);
    assert_eq!(b.degrees(4), vec![6]);
    assert!(b.is_gorenstein_symmetric());
    assert!(verify_resolution(&c, &i).ok);
}

fn example_ideal(r: &Ring) -> Ideal {
    let (x, y, z) = (r.var(0), r.var(1), r.var(2));
    Ideal::new(
        r,
        vec![
            &x.pow(2) - &z.pow(2),
            &y.pow(2) - &z.pow(2),
            &x * &z,
            &y * &z,
            &(&x * &y) + &z.pow(2).scale_int(5),
        ],
    )
    .unwrap()
}

#[test]
fn gorenstein_codimension_three_table() {
    let r = ring(&["x", "y", "z"]);
    let i = example_ideal(&r);
    let c = resolve(&i).unwrap();
    let b = BettiTable::from_complex(&c).unwrap();
    assert_eq!(b.ranks(), vec![1, 5, 5, 1]);
    assert_eq!(b.degrees(1), vec![2]);
    assert_eq!(b.degrees(2), vec![3]);
    assert_eq!(b.degrees(3), vec![5]);
    assert_eq!(b.ideal_regularity(), Some(3));
    assert!(b.is_gorenstein_symmetric());
    assert!(verify_resolution(&c, &i).ok);
}

#[test]
fn minimalize_cancels_units() {
    let r = ring(&["x", "y"]);
    let base = GradedFreeModule::base(&r);
    let one = GradedMatrix::identity(&base);
    let c = ChainComplex::new(base.clone(), vec![one]).unwrap();
    let m = minimalize(&c).unwrap();
    assert!(m.ranks().iter().all(|&k| k == 0));

    let kz = koszul2(&r, &r.var(0), &r.var(1));
    assert_eq!(minimalize(&kz).unwrap(), kz);
}

#[test]
fn minimalize_rejects_non_complexes() {
    let r = ring(&["x", "y"]);
    let d1 = row(&r, &[r.var(0)]);
    let d2 = GradedMatrix::from_columns(d1.source().clone(), vec![vec![r.var(1)]], 0).unwrap();
    assert_eq!(ChainComplex::new(GradedFreeModule::base(&r), vec![d1, d2]).unwrap_err(), Error::ComplexCheckFailed { index: 1 });
}

#[test]
fn cone_over_identity_is_contractible() {
    let r = ring(&["x", "y"]);
    let kz = koszul2(&r, &r.var(0), &r.var(1));
    let ids: Vec<GradedMatrix> = kz.modules().iter().map(GradedMatrix::identity).collect();
    let phi = ChainMap::new(kz.clone(), kz.clone(), 0, ids).unwrap();
    assert!(phi.commutes());
    let cone = mapping_cone(&phi).unwrap();
    let m = minimalize(&cone).unwrap();
    assert!(m.ranks().iter().all(|&k| k == 0));
}

#[test]
fn cone_of_multiplication_resolves_extension() {
    let r = ring(&["x", "y", "z"]);
    let (x, y, z) = (r.var(0), r.var(1), r.var(2));
    let b = Ideal::new(&r, vec![&x.pow(2) - &z.pow(2), &y.pow(2) - &z.pow(2)]).unwrap();
    let bres = resolve(&b).unwrap();
    let yy = z.pow(2);
    let shifted = bres.twist(2);
    let comps: Vec<GradedMatrix> = bres.modules().iter().map(|m| GradedMatrix::scalar_map(m, &yy).unwrap()).collect();
    let phi = ChainMap::new(shifted, bres.clone(), 0, comps).unwrap();
    assert!(phi.commutes());
    let cone = mapping_cone(&phi).unwrap();
    // d_1 = [b_1  y]
    let d1 = cone.map(1);
    assert_eq!(d1.column(2), vec![yy.clone()]);
    assert_eq!(d1.select_columns(&[0, 1]), bres.map(1));
    let by = b.add_generators(&[yy]).unwrap();
    assert!(verify_resolution(&cone, &by).ok);
}

#[test]
fn dual_of_koszul_is_koszul() {
    let r = ring(&["x", "y"]);
    let kz = koszul2(&r, &r.var(0), &r.var(1));
    let d = kz.dual_twist(-2);
    let degs: Vec<Vec<i64>> = d.modules().iter().map(|m| m.degrees().to_vec()).collect();
    assert_eq!(degs, vec![vec![0], vec![1, 1], vec![2]]);
    assert!(d.check_square_zero().is_ok());
    let i = Ideal::new(&r, vec![r.var(0), r.var(1)]).unwrap();
    assert!(verify_resolution(&d, &i).ok);
    for s in [-2, 0, 3] {
        assert_eq!(kz.dual_twist(s).dual_twist(s), kz);
    }
}

#[test]
fn matrix_lifts() {
    let r = ring(&["x", "y"]);
    let (x, y) = (r.var(0), r.var(1));
    let a = row(&r, std::slice::from_ref(&x));
    let x_sol = matrix_lift(&a, &row(&r, &[x.pow(2)])).unwrap();
    assert_eq!(x_sol.entry(0, 0), &x);

    let a = row(&r, &[x.clone(), y.clone()]);
    let rhs = row(&r, &[&x.pow(2) + &y.pow(2)]);
    let sol = matrix_lift(&a, &rhs).unwrap();
    assert_eq!(a.compose(&sol).unwrap(), rhs);

    let a = row(&r, std::slice::from_ref(&x));
    assert_eq!(matrix_lift(&a, &row(&r, std::slice::from_ref(&y))).unwrap_err(), Error::NoLift { column: 0 });
}

#[test]
fn comparison_maps() {
    let r = ring(&["x", "y"]);
    let (x, y) = (r.var(0), r.var(1));
    let a = resolve(&Ideal::new(&r, vec![x.clone()]).unwrap()).unwrap();
    let b = resolve(&Ideal::new(&r, vec![x.pow(2)]).unwrap()).unwrap();
    let alpha = lift_chain_map(&b, &a, &GradedMatrix::identity(&GradedFreeModule::base(&r))).unwrap();
    assert!(alpha.commutes());
    assert_eq!(alpha.component(1).entry(0, 0), &x);

    let kz = koszul2(&r, &x, &y);
    let id = lift_chain_map(&kz, &kz, &GradedMatrix::identity(&GradedFreeModule::base(&r))).unwrap();
    assert!(id.commutes());
}

#[test]
fn null_homotopies() {
    let r = ring(&["x", "y"]);
    let kz = koszul2(&r, &r.var(0), &r.var(1));
    let zeros: Vec<GradedMatrix> = kz.modules().iter().map(|m| GradedMatrix::zero(m.clone(), m.clone())).collect();
    let phi = ChainMap::new(kz.clone(), kz.clone(), 0, zeros).unwrap();
    let h = null_homotopy(&phi).unwrap();
    assert!(h.iter().all(|m| m.is_zero()));
    assert!(is_null_homotopy(&phi, &h));

    // x * id on the Koszul complex of (x, y) induces zero on R/(x, y)
    let x = r.var(0);
    let comps: Vec<GradedMatrix> = kz.modules().iter().map(|m| GradedMatrix::scalar_map(m, &x).unwrap()).collect();
    let phi = ChainMap::new(kz.twist(1), kz.clone(), 0, comps).unwrap();
    assert!(phi.commutes());
    let h = null_homotopy(&phi).unwrap();
    assert!(is_null_homotopy(&phi, &h));
    assert!(!h[0].is_zero());
}

#[test]
fn exactness_detects_non_regular_sequences() {
    let r = ring(&["x", "y"]);
    let (x, y) = (r.var(0), r.var(1));
    let kz = koszul2(&r, &x, &y);
    assert!(verify_resolution(&kz, &Ideal::new(&r, vec![x.clone(), y.clone()]).unwrap()).ok);
    let bad = koszul2(&r, &x, &(&x * &y));
    let check = verify_resolution(&bad, &Ideal::new(&r, vec![x.clone(), &x * &y]).unwrap());
    assert!(!check.ok);
    assert!(check.witness.unwrap().contains("F_1"));
}

#[test]
fn betti_rejects_non_minimal() {
    let r = ring(&["x"]);
    let base = GradedFreeModule::base(&r);
    let c = ChainComplex::new(base.clone(), vec![GradedMatrix::identity(&base)]).unwrap();
    assert_eq!(BettiTable::from_complex(&c).unwrap_err(), Error::NotMinimal(1));
}

#[test]
fn betti_table_renders_grid() {
    let r = ring(&["x", "y", "z"]);
    let b = BettiTable::from_complex(&resolve(&example_ideal(&r)).unwrap()).unwrap();
    let text = b.to_string();
    assert!(text.contains("total:"));
    assert!(text.lines().count() >= 4);
}
