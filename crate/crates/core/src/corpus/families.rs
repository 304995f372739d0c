//! Generators for the example families: complete intersections, Sally ideals,
//! generic submaximal minors and extrasymmetric Pfaffian ideals.

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::liaison::{solve_in_ideal, two_link_construct, BiliaisonData};
use crate::rings::{delete_row_col, determinant, pfaffians, Field, PolyMatrix, PolyRing, Polynomial, Ring, RingExt, Scalar};

/// How the second linking form z = ω + f·y is fixed.
#[derive(Debug, Clone)]
pub enum FChoice {
    Given(Polynomial),
    Search { trials: usize, seed: u64 },
    TargetZ(Polynomial),
}

/// Input of one elementary biliaison together with what it should produce.
#[derive(Debug, Clone)]
pub struct Family {
    pub name: String,
    pub a: Ideal,
    pub b: Ideal,
    pub y: Polynomial,
    pub choice: FChoice,
    /// The ideal the construction must return, when known in advance.
    pub expected: Option<Ideal>,
    /// The residual of the first link, when known in advance.
    pub middle: Option<Ideal>,
}

impl Family {
    pub fn ring(&self) -> &Ring {
        self.a.ring()
    }

    /// Runs both links with the configured choice of f.
    pub fn construct(&self) -> Result<BiliaisonData> {
        let data = BiliaisonData::new(&self.a, &self.b, &self.y)?;
        let data = match &self.choice {
            FChoice::Given(f) => data.with_f(f)?,
            FChoice::Search { trials, seed } => data.search_f(*trials, *seed)?,
            FChoice::TargetZ(t) => data.with_target_z(t)?,
        };
        two_link_construct(data)
    }
}

/// 𝔟 = (x^2 - z^2, y^2 - z^2) ⊂ 𝔞 = (x, y, z) with y = z^2 and f = 5z, giving
/// I = (x^2 - z^2, y^2 - z^2, xz, yz, xy + 5z^2).
pub fn gen_small_pair(field: Field) -> Result<Family> {
    let r = PolyRing::new(&["x", "y", "z"], field)?;
    let (x, y, z) = (r.var(0), r.var(1), r.var(2));
    let b = Ideal::new(&r, vec![&x.pow(2) - &z.pow(2), &y.pow(2) - &z.pow(2)])?;
    let expected = Ideal::new(
        &r,
        vec![&x.pow(2) - &z.pow(2), &y.pow(2) - &z.pow(2), &x * &z, &y * &z, &(&x * &y) + &z.pow(2).scale_int(5)],
    )?;
    Ok(Family {
        name: "small-pair".into(),
        a: Ideal::maximal(&r),
        b,
        y: z.pow(2),
        choice: FChoice::Given(z.scale_int(5)),
        expected: Some(expected),
        middle: None,
    })
}

/// 𝔟 = (x_1^{m_1}, …, x_{g-1}^{m_{g-1}}) ⊂ 𝔞 = (x_1^{n_1}, …, x_g^{n_g}) in
/// K[x_1, …, x_g], linked through y = x_g^{n_g}; f is searched with `seed`.
#[derive(Debug, Clone)]
pub struct CiFamily {
    pub family: Family,
    pub m: Vec<u32>,
    pub n: Vec<u32>,
    /// c = ∏ x_j^{m_j - n_j}.
    pub c: Polynomial,
    pub d: i64,
}

pub fn gen_ci_family(field: Field, m: &[u32], n: &[u32], seed: u64) -> Result<CiFamily> {
    let g = n.len();
    if g < 2 || m.len() + 1 != g {
        return Err(Error::PrecondFailed(format!("need g ≥ 2 exponents n and g - 1 exponents m, got {} and {}", n.len(), m.len())));
    }
    if n.contains(&0) || m.iter().zip(n).any(|(mi, ni)| mi < ni) {
        return Err(Error::PrecondFailed("exponents must satisfy m_i ≥ n_i ≥ 1".into()));
    }
    let d = m.iter().map(|&e| e as i64).sum::<i64>() - n.iter().map(|&e| e as i64).sum::<i64>();
    if d < 0 {
        return Err(Error::PrecondFailed(format!("d = Σm - Σn = {d} is negative")));
    }
    let names: Vec<String> = if g <= 3 { ["x", "y", "z"][..g].iter().map(|s| s.to_string()).collect() } else { (1..=g).map(|i| format!("x{i}")).collect() };
    let r = PolyRing::new(&names, field)?;
    let x = r.vars();
    let b = Ideal::new(&r, m.iter().enumerate().map(|(i, &e)| x[i].pow(e)).collect())?;
    let a = Ideal::new(&r, n.iter().enumerate().map(|(i, &e)| x[i].pow(e)).collect())?;
    let mut c = Polynomial::one(&r);
    for (i, (&mi, &ni)) in m.iter().zip(n).enumerate() {
        c = &c * &x[i].pow(mi - ni);
    }
    let join = |v: &[u32]| v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(".");
    let name = format!("ci-g{g}-m{}-n{}", join(m), join(n));
    let family = Family {
        name,
        a,
        b,
        y: x[g - 1].pow(n[g - 1]),
        choice: FChoice::Search { trials: 50, seed },
        expected: None,
        middle: None,
    };
    Ok(CiFamily { family, m: m.to_vec(), n: n.to_vec(), c, d })
}

impl CiFamily {
    /// (x_1^{m_1}, …, f x_1^{n_1}, …, f x_{g-1}^{n_{g-1}}, c + f x_g^{n_g}).
    pub fn expected_for(&self, f: &Polynomial) -> Result<Ideal> {
        let r = self.family.ring();
        let x = r.vars();
        let g = self.n.len();
        let mut gens: Vec<Polynomial> = self.m.iter().enumerate().map(|(i, &e)| x[i].pow(e)).collect();
        for i in 0..g - 1 {
            gens.push(f * &x[i].pow(self.n[i]));
        }
        gens.push(&self.c + &(f * &x[g - 1].pow(self.n[g - 1])));
        Ideal::new(r, gens)
    }

    /// The unit u with ω ≡ u·c modulo (𝔟, y); the formula holds for f / u.
    pub fn omega_unit(&self, omega: &Polynomial) -> Result<Option<Scalar>> {
        let by = self.family.b.add_generators(std::slice::from_ref(&self.family.y))?;
        let sol = solve_in_ideal(&by, std::slice::from_ref(omega), &[vec![self.c.clone()]])?;
        Ok(sol.map(|s| s[0].clone()).filter(|u| !u.is_zero()))
    }
}

/// The Sally ideal (x_i x_j | i < j) + (x_i^2 - c_i x_n^2 | i < n) in n variables.
pub fn sally_ideal(r: &Ring, units: &[Scalar]) -> Result<Ideal> {
    let n = r.nvars();
    let x = r.vars();
    let mut gens = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            gens.push(&x[i] * &x[j]);
        }
    }
    let xn2 = x[n - 1].pow(2);
    for (i, c) in units.iter().enumerate().take(n - 1) {
        gens.push(&x[i].pow(2) - &xn2.scale(c));
    }
    Ideal::new(r, gens)
}

/// Sally ideal with h-vector (1, n, 1) from 𝔞 = (x_1, …, x_n) on 𝔟, the Sally
/// ideal of x_1, …, x_{n-1} with x_{n-1} playing the last variable, extended
/// to R; y = x_n and z = x_{n-1}^2 - c_{n-1} x_n^2.
pub fn gen_sally(field: Field, units: &[i64]) -> Result<Family> {
    let n = units.len() + 1;
    if n < 3 {
        return Err(Error::PrecondFailed("n must be at least 3".into()));
    }
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let r = PolyRing::new(&names, field)?;
    let scalars: Vec<Scalar> = units.iter().map(|&c| r.scalar(c)).collect();
    if scalars.iter().any(|c| c.is_zero()) {
        return Err(Error::PrecondFailed("the constants c_i must be units".into()));
    }
    let x = r.vars();
    let mut bgens = Vec::new();
    for i in 0..n - 1 {
        for j in i + 1..n - 1 {
            bgens.push(&x[i] * &x[j]);
        }
    }
    let last = x[n - 2].pow(2);
    for (i, c) in scalars.iter().enumerate().take(n - 2) {
        let cn = scalars[n - 2].inv().map(|inv| c * &inv).unwrap();
        bgens.push(&x[i].pow(2) - &last.scale(&cn));
    }
    let b = Ideal::new(&r, bgens)?;
    let a = Ideal::maximal(&r);
    let target = &x[n - 2].pow(2) - &x[n - 1].pow(2).scale(&scalars[n - 2]);
    let mut middle = Vec::new();
    for i in 0..n - 1 {
        for j in i..n - 1 {
            middle.push(&x[i] * &x[j]);
        }
    }
    middle.push(x[n - 1].clone());
    Ok(Family {
        name: format!("sally-n{n}"),
        expected: Some(sally_ideal(&r, &scalars)?),
        middle: Some(Ideal::new(&r, middle)?),
        a,
        b,
        y: x[n - 1].clone(),
        choice: FChoice::TargetZ(target),
    })
}

/// Generic n×n matrix on variables x_{ij} (row-major, 1-based names).
pub fn generic_matrix(n: usize, field: Field) -> Result<(Ring, PolyMatrix)> {
    let names: Vec<String> = (1..=n).flat_map(|i| (1..=n).map(move |j| format!("x{i}{j}"))).collect();
    let r = PolyRing::new(&names, field)?;
    let m = (0..n).map(|i| (0..n).map(|j| r.var(n * i + j)).collect()).collect();
    Ok((r, m))
}

/// Submaximal minors of the generic n×n matrix M from 𝔞 = I_{n-2}(N), N the
/// upper left (n-1)×(n-1) block, on 𝔟 = (M_{i,n}, M_{n,j} | i, j ≤ n), with
/// y = N_{1,1} and z = M_{1,1}. For n = 2 the ideal is the complete
/// intersection of the entries and no construction is attached.
pub fn gen_generic_minors(n: usize, field: Field) -> Result<(Ideal, Option<Family>)> {
    if n < 2 {
        return Err(Error::PrecondFailed("n must be at least 2".into()));
    }
    let (r, m) = generic_matrix(n, field)?;
    let minor = |i: usize, j: usize| determinant(&r, &delete_row_col(&m, i, j));
    let mut all = Vec::new();
    for i in 0..n {
        for j in 0..n {
            all.push(minor(i, j)?);
        }
    }
    let ideal = Ideal::new(&r, all)?;
    if n == 2 {
        return Ok((ideal, None));
    }
    let nmat: PolyMatrix = m[..n - 1].iter().map(|row| row[..n - 1].to_vec()).collect();
    let a = if n == 3 {
        Ideal::new(&r, nmat.iter().flatten().cloned().collect())?
    } else {
        let mut gens = Vec::new();
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                gens.push(determinant(&r, &delete_row_col(&nmat, i, j))?);
            }
        }
        Ideal::new(&r, gens)?
    };
    let mut bgens = Vec::new();
    for i in 0..n {
        bgens.push(minor(i, n - 1)?);
    }
    for j in 0..n - 1 {
        bgens.push(minor(n - 1, j)?);
    }
    let b = Ideal::new(&r, bgens)?;
    let y = if n == 3 { nmat[1][1].clone() } else { determinant(&r, &delete_row_col(&nmat, 0, 0))? };
    let family = Family {
        name: format!("generic-minors-n{n}"),
        a,
        b,
        y,
        choice: FChoice::TargetZ(minor(0, 0)?),
        expected: Some(ideal.clone()),
        middle: None,
    };
    Ok((ideal, Some(family)))
}

/// The Sylvester identity N_{1,1}·I + 𝔟 = M_{1,1}·𝔞 + 𝔟 for a generic-minors family.
pub fn sylvester_identity(family: &Family) -> Result<bool> {
    let i = family.expected.as_ref().ok_or_else(|| Error::PrecondFailed("family has no target ideal".into()))?;
    let FChoice::TargetZ(z) = &family.choice else {
        return Err(Error::PrecondFailed("family has no prescribed z".into()));
    };
    let lhs = i.scale(&family.y)?.sum(&family.b)?;
    let rhs = family.a.scale(z)?.sum(&family.b)?;
    Ok(lhs.equals(&rhs))
}

/// Output of [`gen_extrasymmetric`].
#[derive(Debug, Clone)]
pub struct Extrasymmetric {
    pub family: Family,
    pub lambda: i64,
    /// The extrasymmetric matrix N = [[B, A], [-A, λB]].
    pub n: PolyMatrix,
    /// The extrasymmetric matrix whose 4×4 Pfaffians generate I.
    pub m_prime: PolyMatrix,
}

pub const EXTRASYMMETRIC_VARS: [&str; 9] = ["a", "b", "c", "d", "e", "f", "x", "y", "z"];

/// Pfaffian ideal of N = [[B, A], [-A, λB]] with A generic symmetric and B
/// generic skew-symmetric 3×3 in K[a, b, c, d, e, f, x, y, z]; 𝔟 is its first
/// three listed generators, y = cd - be + λxz and z = ax + y.
pub fn gen_extrasymmetric(field: Field, lambda: i64) -> Result<Extrasymmetric> {
    let r = PolyRing::new(&EXTRASYMMETRIC_VARS, field)?;
    let lam = r.scalar(lambda);
    let inv = lam.inv().ok_or_else(|| Error::PrecondFailed("λ must be a unit".into()))?;
    let v = r.vars();
    let (a, b, c, d, e, f, x, y, z) = (&v[0], &v[1], &v[2], &v[3], &v[4], &v[5], &v[6], &v[7], &v[8]);
    let zero = Polynomial::zero(&r);
    let l = |p: &Polynomial| p.scale(&lam);
    let neg = |p: &Polynomial| -p;
    let sym = [[a, b, c], [b, d, e], [c, e, f]];
    let skew = [[zero.clone(), x.clone(), y.clone()], [neg(x), zero.clone(), z.clone()], [neg(y), neg(z), zero.clone()]];
    let mut nmat: PolyMatrix = vec![vec![zero.clone(); 6]; 6];
    for i in 0..3 {
        for j in 0..3 {
            nmat[i][j] = skew[i][j].clone();
            nmat[i][j + 3] = sym[i][j].clone();
            nmat[i + 3][j] = neg(sym[i][j]);
            nmat[i + 3][j + 3] = l(&skew[i][j]);
        }
    }
    let lx = l(x);
    let ly = l(y);
    let lz = l(z);
    let ax = a * x;
    let gens_a = vec![
        &(&b.pow(2) - &(a * d)) + &l(&x.pow(2)),
        &(&(b * c) - &(a * e)) + &l(&(x * y)),
        &(&c.pow(2) - &(a * f)) + &l(&y.pow(2)),
        &(&(c * d) - &(b * e)) + &l(&(x * z)),
        &(&(c * e) - &(b * f)) + &l(&(y * z)),
        &(&e.pow(2) - &(d * f)) + &l(&z.pow(2)),
        &(&(c * x) - &(b * y)) + &(a * z),
        &(&(e * x) - &(d * y)) + &(b * z),
        &(&(f * x) - &(e * y)) + &(c * z),
    ];
    let a_ideal = Ideal::new(&r, gens_a.clone())?;
    let b_ideal = Ideal::new(&r, gens_a[..3].to_vec())?;
    let yy = gens_a[3].clone();
    let target = &ax + &yy;
    let expected = vec![
        &(&(&(&(&e.pow(2) - &(d * f)) - &(c * x)) + &(b * y)) + &(a * z)) + &l(&z.pow(2)),
        &(&(&(c * e) - &(b * f)) + &(a * y)) + &l(&(y * z)),
        &(&(&(c * d) - &(b * e)) + &ax) + &l(&(x * z)),
        gens_a[2].clone(),
        gens_a[1].clone(),
        &(&(&(a * c) + &(f * &lx)) - &(e * &ly)) + &(c * &lz),
        gens_a[0].clone(),
        &(&(&(a * b) + &(e * &lx)) - &(d * &ly)) + &(b * &lz),
        &(&(&a.pow(2) + &(c * &lx)) - &(b * &ly)) + &(a * &lz),
    ];
    let a_over = &a.scale(&inv) + z;
    let a_plus = a + &lz;
    let m_prime: PolyMatrix = vec![
        vec![zero.clone(), x.clone(), y.clone(), a.clone(), b.clone(), c.clone()],
        vec![neg(x), zero.clone(), a_over.clone(), b.clone(), d.clone(), e.clone()],
        vec![neg(y), neg(&a_over), zero.clone(), c.clone(), e.clone(), f.clone()],
        vec![neg(a), neg(b), neg(c), zero.clone(), lx.clone(), ly.clone()],
        vec![neg(b), neg(d), neg(e), neg(&lx), zero.clone(), a_plus.clone()],
        vec![neg(c), neg(e), neg(f), neg(&ly), neg(&a_plus), zero.clone()],
    ];
    let family = Family {
        name: format!("extrasymmetric-l{lambda}"),
        a: a_ideal,
        b: b_ideal,
        y: yy,
        choice: FChoice::TargetZ(target),
        expected: Some(Ideal::new(&r, expected)?),
        middle: None,
    };
    Ok(Extrasymmetric { family, lambda, n: nmat, m_prime })
}

impl Extrasymmetric {
    /// The ideal of 4×4 Pfaffians of N.
    pub fn pfaffian_ideal(&self) -> Result<Ideal> {
        Ideal::new(self.family.ring(), pfaffians(self.family.ring(), &self.n, 4)?)
    }

    /// The ideal of 4×4 Pfaffians of M′.
    pub fn m_prime_pfaffians(&self) -> Result<Ideal> {
        Ideal::new(self.family.ring(), pfaffians(self.family.ring(), &self.m_prime, 4)?)
    }
}
