//! Gorenstein links and the two-link construction of a new Gorenstein ideal
//! from a pair 𝔟 ⊂ 𝔞 of Gorenstein ideals of grades g - 1 and g.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::homological::{lift_chain_map, resolve, BettiTable, ChainComplex, ChainMap, GradedFreeModule, GradedMatrix};
use crate::rings::{solve_affine, Polynomial, Ring, RingExt, Scalar};

/// Record of a direct link I ~ J by the linking ideal 𝔠.
#[derive(Debug, Clone)]
pub struct LinkCertificate {
    pub linking: Ideal,
    pub input: Ideal,
    pub residual: Ideal,
    /// 𝔠 ⊆ I ∩ J.
    pub contained: bool,
    /// 𝔠 : I = J.
    pub forward: bool,
    /// 𝔠 : J = I.
    pub backward: bool,
    pub grades_equal: bool,
}

impl LinkCertificate {
    pub fn is_valid(&self) -> bool {
        self.contained && self.forward && self.backward && self.grades_equal
    }

    pub fn summary(&self) -> LinkSummary {
        LinkSummary {
            linking: self.linking.render(),
            residual: self.residual.render(),
            contained: self.contained,
            forward: self.forward,
            backward: self.backward,
            grades_equal: self.grades_equal,
        }
    }
}

/// Serializable view of a [`LinkCertificate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkSummary {
    pub linking: String,
    pub residual: String,
    pub contained: bool,
    pub forward: bool,
    pub backward: bool,
    pub grades_equal: bool,
}

/// Links I by 𝔠: J = 𝔠 : I, and certifies the link including 𝔠 : J = I.
pub fn direct_link(c: &Ideal, i: &Ideal) -> Result<(Ideal, LinkCertificate)> {
    if !c.is_subset_of(i)? {
        return Err(Error::PrecondFailed(format!("linking ideal {} is not contained in {}", c, i)));
    }
    if i.is_subset_of(c)? {
        return Err(Error::PrecondFailed(format!("linking ideal {} equals the ideal being linked", c)));
    }
    let (gc, gi) = (c.grade(), i.grade());
    if gc != gi {
        return Err(Error::PrecondFailed(format!("grade of the linking ideal is {gc}, grade of the ideal is {gi}")));
    }
    let j = c.colon(i)?;
    let back = c.colon(&j)?;
    let cert = LinkCertificate {
        linking: c.clone(),
        input: i.clone(),
        residual: j.clone(),
        contained: c.is_subset_of(&j)?,
        forward: true,
        backward: back.equals(i),
        grades_equal: j.grade() == gi,
    };
    Ok((j, cert))
}

/// R/I is Gorenstein: its minimal resolution has length grade(I) and a
/// rank-one last module.
pub fn is_gorenstein(i: &Ideal) -> Result<bool> {
    if i.is_unit() {
        return Ok(false);
    }
    let c = resolve(i)?;
    Ok(c.length() == i.grade() && c.module(c.length() as isize).rank() == 1)
}

/// ω together with the lift it was read from.
#[derive(Debug, Clone)]
pub struct OmegaData {
    /// Normal form of ω modulo (𝔟, y).
    pub omega: Polynomial,
    /// The entry of μ_g before normal-forming.
    pub raw: Polynomial,
    /// raw ≡ omega + q·y modulo 𝔟.
    pub q: Polynomial,
    pub mu: ChainMap,
    pub b_prime: ChainComplex,
}

/// Resolution of (𝔟, y) for a nonzerodivisor y on R/𝔟, with differentials
/// [[b_i, (-1)^(i-1) y], [0, b_(i-1)]].
pub fn extension_resolution(b: &ChainComplex, y: &Polynomial) -> Result<ChainComplex> {
    let e = homogeneous_degree(y)?;
    let g = b.length() as isize + 1;
    let block = |i: isize| b.module(i).direct_sum(&b.module(i - 1).twist(e));
    let mut maps = Vec::new();
    for i in 1..=g {
        let sign = if i % 2 == 1 { 1 } else { -1 };
        let top_left = b.map(i);
        let top_right = GradedMatrix::scalar_map(&b.module(i - 1), &y.scale_int(sign))?;
        let bottom_left = GradedMatrix::zero(b.module(i), b.module(i - 2).twist(e));
        let bottom_right = b.map(i - 1).twist(e);
        let d = GradedMatrix::block(&top_left, &top_right, &bottom_left, &bottom_right)?;
        debug_assert!(d.source() == &block(i) && d.target() == &block(i - 1));
        maps.push(d);
    }
    ChainComplex::new(block(0), maps)
}

/// Comparison map from the resolution of R/𝔟 to that of R/𝔞 over the identity.
pub fn comparison_map(b_res: &ChainComplex, a_res: &ChainComplex) -> Result<ChainMap> {
    let base = GradedFreeModule::base(a_res.ring());
    lift_chain_map(b_res, a_res, &GradedMatrix::identity(&base))
}

/// Extracts ω from the comparison map (𝔟, y) → 𝔞 whose 𝔟-block is α.
pub fn compute_omega(a_res: &ChainComplex, b_res: &ChainComplex, alpha: &ChainMap, y: &Polynomial, b: &Ideal) -> Result<OmegaData> {
    let ring = a_res.ring().clone();
    let g = a_res.length() as isize;
    let b_prime = extension_resolution(b_res, y)?;
    if b_prime.length() as isize != g {
        return Err(Error::PrecondFailed(format!(
            "resolution lengths {} and {} are not g and g - 1",
            a_res.length(),
            b_res.length()
        )));
    }
    let mut comps = vec![GradedMatrix::identity(&GradedFreeModule::base(&ring))];
    for i in 1..=g {
        let rhs = comps[i as usize - 1].compose(&b_prime.map(i))?;
        let nb = b_res.module(i).rank();
        let tail: Vec<usize> = (nb..rhs.ncols()).collect();
        let r_i = a_res.map(i).lift(&rhs.select_columns(&tail))?;
        let mu_i = alpha.component(i).hstack(&r_i)?;
        comps.push(mu_i);
    }
    let mu = ChainMap::new(b_prime.clone(), a_res.clone(), 0, comps)?;
    let top = mu.component(g);
    if top.nrows() != 1 || top.ncols() != 1 {
        return Err(Error::PrecondFailed("top modules of the resolutions are not of rank one".into()));
    }
    let raw = top.entry(0, 0).clone();
    let by = b.add_generators(std::slice::from_ref(y))?;
    let omega = by.normal_form(&raw)?;
    let d = homogeneous_degree(&raw)? - homogeneous_degree(y)?;
    let q = if raw == omega {
        Polynomial::zero(&ring)
    } else {
        solve_multiplier(b, &[&omega - &raw], std::slice::from_ref(y), d)?
            .ok_or_else(|| Error::PrecondFailed("ω is not congruent to its normal form modulo (𝔟, y)".into()))?
    };
    Ok(OmegaData { omega, raw, q, mu, b_prime })
}

fn homogeneous_degree(p: &Polynomial) -> Result<i64> {
    match p.homogeneous_degree() {
        Some(d) => Ok(d as i64),
        None if p.is_zero() => Err(Error::ZeroPolynomial),
        None => Err(Error::Inhomogeneous(p.to_string())),
    }
}

/// Forms of degree `d`; empty for negative `d`.
fn forms_basis(ring: &Ring, d: i64) -> Vec<Polynomial> {
    if d < 0 {
        return Vec::new();
    }
    ring.monomials_of_degree(d as u32)
        .into_iter()
        .map(|m| Polynomial::monomial(ring, m, ring.field().one()))
        .collect()
}

/// Scalars s with Σ_k s_k·basis[k][j] ≡ targets[j] modulo `ideal` for every j.
pub fn solve_in_ideal(ideal: &Ideal, targets: &[Polynomial], basis: &[Vec<Polynomial>]) -> Result<Option<Vec<Scalar>>> {
    Ok(solution_space(ideal, targets, basis)?.map(|(x, _)| x))
}

/// Particular solution and kernel basis of the system in [`solve_in_ideal`].
#[allow(clippy::type_complexity)]
fn solution_space(
    ideal: &Ideal,
    targets: &[Polynomial],
    basis: &[Vec<Polynomial>],
) -> Result<Option<(Vec<Scalar>, Vec<Vec<Scalar>>)>> {
    let field = ideal.ring().field();
    let mut index: BTreeMap<(usize, Vec<u16>), usize> = BTreeMap::new();
    let mut coords = |nf: &Polynomial, j: usize, out: &mut BTreeMap<usize, Scalar>| {
        for (m, c) in nf.terms() {
            let n = index.len();
            let row = *index.entry((j, m.exponents().to_vec())).or_insert(n);
            out.insert(row, c.clone());
        }
    };
    let mut cols: Vec<BTreeMap<usize, Scalar>> = Vec::with_capacity(basis.len());
    for vec in basis {
        let mut col = BTreeMap::new();
        for (j, p) in vec.iter().enumerate() {
            coords(&ideal.normal_form(p)?, j, &mut col);
        }
        cols.push(col);
    }
    let mut rhs_map = BTreeMap::new();
    for (j, t) in targets.iter().enumerate() {
        coords(&ideal.normal_form(t)?, j, &mut rhs_map);
    }
    let nrows = index.len();
    let a: Vec<Vec<Scalar>> = (0..nrows)
        .map(|r| cols.iter().map(|c| c.get(&r).cloned().unwrap_or_else(|| field.zero())).collect())
        .collect();
    let b: Vec<Scalar> = (0..nrows).map(|r| rhs_map.get(&r).cloned().unwrap_or_else(|| field.zero())).collect();
    Ok(solve_affine(field, &a, &b, basis.len()))
}

fn combine(forms: &[Polynomial], coeffs: &[Scalar]) -> Polynomial {
    let mut f = Polynomial::zero(forms[0].ring());
    for (m, s) in forms.iter().zip(coeffs) {
        if !s.is_zero() {
            f = &f + &m.scale(s);
        }
    }
    f
}

/// A form f of degree d with p_j + f·q_j ∈ ideal for every j.
pub fn solve_multiplier(ideal: &Ideal, p: &[Polynomial], q: &[Polynomial], d: i64) -> Result<Option<Polynomial>> {
    Ok(multiplier_space(ideal, p, q, d)?.map(|(f, _)| f))
}

#[allow(clippy::type_complexity)]
fn multiplier_space(ideal: &Ideal, p: &[Polynomial], q: &[Polynomial], d: i64) -> Result<Option<(Polynomial, Vec<Polynomial>)>> {
    let ring = ideal.ring().clone();
    let forms = forms_basis(&ring, d);
    if forms.is_empty() {
        return Ok(None);
    }
    let targets: Vec<Polynomial> = p.iter().map(|x| -x).collect();
    let basis: Vec<Vec<Polynomial>> = forms.iter().map(|m| q.iter().map(|x| m * x).collect()).collect();
    let Some((x, kernel)) = solution_space(ideal, &targets, &basis)? else {
        return Ok(None);
    };
    Ok(Some((combine(&forms, &x), kernel.iter().map(|k| combine(&forms, k)).collect())))
}

/// A form f of degree d with base + (p_j + f·q_j : j) = ideal. Searches the
/// affine space of f's satisfying the containment: the particular solution,
/// then single kernel directions, then seeded combinations.
pub fn find_multiplier(ideal: &Ideal, base: &Ideal, p: &[Polynomial], q: &[Polynomial], d: i64) -> Result<Option<Polynomial>> {
    let Some((f0, kernel)) = multiplier_space(ideal, p, q, d)? else {
        return Ok(None);
    };
    let works = |f: &Polynomial| -> Result<bool> {
        let entries: Vec<Polynomial> = p.iter().zip(q).map(|(a, b)| a + &(f * b)).collect();
        Ok(base.add_generators(&entries)?.equals(ideal))
    };
    if works(&f0)? {
        return Ok(Some(f0));
    }
    for k in &kernel {
        let f = &f0 + k;
        if works(&f)? {
            return Ok(Some(f));
        }
    }
    if kernel.is_empty() {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..16 {
        let mut f = f0.clone();
        for k in &kernel {
            f = &f + &k.scale_int(rng.gen_range(-50..=50));
        }
        if works(&f)? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Candidate f's in search order: 0, then monomials with coefficients
/// 1, -1, 2, -2, 3, -3, then dense forms with seeded coefficients.
fn candidates(ring: &Ring, d: i64, seed: u64) -> impl Iterator<Item = Polynomial> {
    let forms = forms_basis(ring, d);
    let zero = std::iter::once(Polynomial::zero(ring));
    let monos: Vec<Polynomial> = [1i64, -1, 2, -2, 3, -3]
        .iter()
        .flat_map(|&c| forms.iter().map(move |m| m.scale_int(c)))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut round = 0i64;
    let dense = std::iter::from_fn(move || {
        round += 1;
        let bound = 10 * round;
        let mut f = Polynomial::zero(&forms[0].ring().clone());
        for m in &forms {
            let c = rng.gen_range(-bound..=bound);
            f = &f + &m.scale_int(c);
        }
        Some(f)
    });
    zero.chain(monos).chain(dense)
}

/// Searches for f of degree d making ω + f·y a nonzerodivisor on R/𝔟.
pub fn choose_f(b: &Ideal, y: &Polynomial, omega: &Polynomial, d: i64, trials: usize, seed: u64) -> Result<Polynomial> {
    if d < 0 {
        return Err(Error::PrecondFailed(format!("d = {d} is negative")));
    }
    let ring = b.ring().clone();
    let mut rejected = Vec::new();
    for f in candidates(&ring, d, seed).take(trials) {
        if admissible_f(b, y, omega, &f)? {
            return Ok(f);
        }
        rejected.push(f.to_string());
    }
    Err(Error::SearchExhausted { trials, rejected })
}

/// Whether ω + f·y is a nonzerodivisor on R/𝔟.
pub fn admissible_f(b: &Ideal, y: &Polynomial, omega: &Polynomial, f: &Polynomial) -> Result<bool> {
    let z = omega + &(f * y);
    if z.is_zero() {
        return Ok(false);
    }
    b.is_nonzerodivisor(&z)
}

/// The f for which (𝔟, ω + f·y) = (𝔟, target): solves target ≡ c·ω + f'·y mod 𝔟
/// and returns f'/c.
pub fn f_for_target_z(b: &Ideal, y: &Polynomial, omega: &Polynomial, target: &Polynomial, d: i64) -> Result<Polynomial> {
    let ring = b.ring().clone();
    let forms = forms_basis(&ring, d);
    let mut basis = vec![vec![omega.clone()]];
    basis.extend(forms.iter().map(|m| vec![m * y]));
    let sol = solve_in_ideal(b, std::slice::from_ref(target), &basis)?
        .ok_or_else(|| Error::PrecondFailed(format!("{target} is not in (𝔟, y, ω)")))?;
    let c = sol[0].inv().ok_or_else(|| Error::PrecondFailed(format!("{target} has no ω component modulo (𝔟, y)")))?;
    let scaled: Vec<Scalar> = sol[1..].iter().map(|s| s * &c).collect();
    Ok(combine(&forms, &scaled))
}

/// Comparison of the colon-route ideal with 𝔟 + (α*_{g-1} + (-1)^g f·a_g*).
#[derive(Debug, Clone)]
pub struct FormulaCheck {
    /// f relative to the unreduced ω.
    pub f_raw: Polynomial,
    pub matches: bool,
    /// Whether 𝔟 + (α*_{g-1} - (-1)^g f·a_g*) reproduces I.
    pub opposite_sign_matches: bool,
    /// An f' for which the formula reproduces I, when one exists.
    pub effective: Option<Polynomial>,
}

/// Input, derived and output data of one elementary biliaison.
#[derive(Debug, Clone)]
pub struct BiliaisonData {
    pub a: Ideal,
    pub b: Ideal,
    pub y: Polynomial,
    pub f: Option<Polynomial>,
    pub g: usize,
    pub u: i64,
    pub v: i64,
    pub d: i64,
    pub e: i64,
    pub a_res: ChainComplex,
    pub b_res: ChainComplex,
    pub alpha: ChainMap,
    pub omega: OmegaData,
    pub z: Option<Polynomial>,
    pub j: Option<Ideal>,
    pub i: Option<Ideal>,
    pub first_link: Option<LinkCertificate>,
    pub second_link: Option<LinkCertificate>,
    pub formula: Option<FormulaCheck>,
    pub i_res: Option<ChainComplex>,
}

impl BiliaisonData {
    /// Checks the hypotheses and computes the resolutions, α and ω.
    pub fn new(a: &Ideal, b: &Ideal, y: &Polynomial) -> Result<BiliaisonData> {
        if !a.ring().same(b.ring()) || !a.ring().same(y.ring()) {
            return Err(Error::RingMismatch);
        }
        let g = a.grade();
        if b.grade() + 1 != g {
            return Err(Error::PrecondFailed(format!("grades {} and {} do not differ by one", g, b.grade())));
        }
        if !b.is_subset_of(a)? {
            return Err(Error::PrecondFailed("𝔟 is not contained in 𝔞".into()));
        }
        let e = homogeneous_degree(y)?;
        if !a.contains(y)? {
            return Err(Error::PrecondFailed(format!("{y} is not in 𝔞")));
        }
        if !b.is_nonzerodivisor(y)? {
            return Err(Error::NotNzd(y.to_string()));
        }
        let a_res = resolve(a)?;
        let b_res = resolve(b)?;
        if a_res.length() != g || a_res.module(g as isize).rank() != 1 {
            return Err(Error::PrecondFailed("𝔞 is not Gorenstein".into()));
        }
        if b_res.length() != g - 1 || b_res.module(g as isize - 1).rank() != 1 {
            return Err(Error::PrecondFailed("𝔟 is not Gorenstein".into()));
        }
        let v = a_res.module(g as isize).degree(0);
        let u = b_res.module(g as isize - 1).degree(0);
        let d = u - v;
        if d < 0 {
            return Err(Error::PrecondFailed(format!("d = u - v = {u} - {v} is negative")));
        }
        let alpha = comparison_map(&b_res, &a_res)?;
        let omega = compute_omega(&a_res, &b_res, &alpha, y, b)?;
        Ok(BiliaisonData {
            a: a.clone(),
            b: b.clone(),
            y: y.clone(),
            f: None,
            g,
            u,
            v,
            d,
            e,
            a_res,
            b_res,
            alpha,
            omega,
            z: None,
            j: None,
            i: None,
            first_link: None,
            second_link: None,
            formula: None,
            i_res: None,
        })
    }

    /// Fixes f, checking its degree and that ω + f·y is a nonzerodivisor on R/𝔟.
    pub fn with_f(mut self, f: &Polynomial) -> Result<BiliaisonData> {
        if !f.is_zero() && f.homogeneous_degree() != Some(self.d as u32) {
            return Err(Error::PrecondFailed(format!("f = {f} is not a form of degree {}", self.d)));
        }
        if !admissible_f(&self.b, &self.y, &self.omega.omega, f)? {
            let z = &self.omega.omega + &(f * &self.y);
            return Err(Error::NotNzd(z.to_string()));
        }
        self.z = Some(&self.omega.omega + &(f * &self.y));
        self.f = Some(f.clone());
        Ok(self)
    }

    /// Fixes f by [`choose_f`].
    pub fn search_f(self, trials: usize, seed: u64) -> Result<BiliaisonData> {
        let f = choose_f(&self.b, &self.y, &self.omega.omega, self.d, trials, seed)?;
        self.with_f(&f)
    }

    /// Fixes f so that the second linking ideal is (𝔟, target).
    pub fn with_target_z(self, target: &Polynomial) -> Result<BiliaisonData> {
        let f = f_for_target_z(&self.b, &self.y, &self.omega.omega, target, self.d)?;
        self.with_f(&f)
    }

    pub fn ideal(&self) -> Option<&Ideal> {
        self.i.as_ref()
    }

    pub fn ring(&self) -> &Ring {
        self.a.ring()
    }
}

/// Runs both links: J = (𝔟, y) : 𝔞, then I = (𝔟, z) : J.
pub fn two_link_construct(data: BiliaisonData) -> Result<BiliaisonData> {
    let mut data = data;
    let f = data.f.clone().ok_or_else(|| Error::PrecondFailed("f has not been chosen".into()))?;
    let z = data.z.clone().unwrap();
    let by = data.b.add_generators(std::slice::from_ref(&data.y))?;
    let (j, first) = direct_link(&by, &data.a)?;
    let bz = data.b.add_generators(std::slice::from_ref(&z))?;
    let (i, second) = direct_link(&bz, &j)?;
    let found = i.grade();
    if found != data.g {
        return Err(Error::GradeDrop { expected: data.g, found });
    }
    let i_res = resolve(&i)?;
    if i_res.length() != data.g || i_res.module(data.g as isize).rank() != 1 {
        return Err(Error::PrecondFailed(format!("{} is not Gorenstein", i)));
    }
    data.formula = Some(formula_check(&data, &f, &i)?);
    data.j = Some(j);
    data.i = Some(i);
    data.first_link = Some(first);
    data.second_link = Some(second);
    data.i_res = Some(i_res);
    Ok(data)
}

fn formula_check(data: &BiliaisonData, f: &Polynomial, i: &Ideal) -> Result<FormulaCheck> {
    let g = data.g as isize;
    let f_raw = f - &data.omega.q;
    let alpha_col = data.alpha.component(g - 1).column(0);
    let sign = if g % 2 == 0 { 1 } else { -1 };
    let a_col: Vec<Polynomial> = data.a_res.map(g).column(0).iter().map(|p| p.scale_int(sign)).collect();
    let row = |f: &Polynomial| -> Result<bool> {
        let entries: Vec<Polynomial> = alpha_col.iter().zip(&a_col).map(|(p, q)| p + &(f * q)).collect();
        Ok(data.b.add_generators(&entries)?.equals(i))
    };
    let matches = row(&f_raw)?;
    let opposite_sign_matches = row(&-&f_raw)?;
    let effective = if matches {
        Some(f_raw.clone())
    } else if opposite_sign_matches {
        Some(-&f_raw)
    } else {
        find_multiplier(i, &data.b, &alpha_col, &a_col, data.d)?
    };
    Ok(FormulaCheck { f_raw, matches, opposite_sign_matches, effective })
}

/// Outcome of [`hilbert_identity_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub holds: bool,
    pub first_failure: Option<i64>,
    pub upto: i64,
}

/// Checks h_{R/I}(j) = h_{R/𝔞}(j - d) + h_{R/𝔟}(j) - h_{R/𝔟}(j - d) for
/// 0 ≤ j ≤ reg I + g + 2.
pub fn hilbert_identity_check(data: &BiliaisonData) -> Result<IdentityCheck> {
    let i = data.i.as_ref().ok_or_else(|| Error::PrecondFailed("construction has not been run".into()))?;
    let upto = check_window(data)?;
    let (hi, ha, hb) = (i.hilbert(), data.a.hilbert(), data.b.hilbert());
    let d = data.d;
    for j in 0..=upto {
        if hi.value(j) != ha.value(j - d) + hb.value(j) - hb.value(j - d) {
            return Ok(IdentityCheck { holds: false, first_failure: Some(j), upto });
        }
    }
    Ok(IdentityCheck { holds: true, first_failure: None, upto })
}

/// reg I + g + 2, with reg I the regularity of the ideal.
pub(crate) fn check_window(data: &BiliaisonData) -> Result<i64> {
    let res = data.i_res.as_ref().ok_or_else(|| Error::PrecondFailed("construction has not been run".into()))?;
    let reg = BettiTable::from_complex(res)?.ideal_regularity().unwrap_or(0);
    Ok(reg + data.g as i64 + 2)
}
