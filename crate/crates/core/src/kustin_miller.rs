//! The Kustin–Miller type resolution of the ideal produced by an elementary
//! biliaison, with its minimality, biliaison and regularity corollaries.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homological::{
    cancel_unit, null_homotopy, resolve, BettiTable, ChainComplex, ChainMap, GradedFreeModule, GradedMatrix,
};
use crate::liaison::{check_window, find_multiplier, BiliaisonData};
use crate::rings::{Polynomial, Ring};

/// Every entry multiplied by `f`, reinterpreted between the given modules.
fn times(m: &GradedMatrix, f: &Polynomial, source: GradedFreeModule, target: GradedFreeModule) -> Result<GradedMatrix> {
    let rows = m.rows().iter().map(|r| r.iter().map(|p| p * f).collect()).collect();
    GradedMatrix::new(source, target, rows)
}

/// f·id as a map source -> target of equal rank.
fn scaled_identity(f: &Polynomial, source: GradedFreeModule, target: GradedFreeModule) -> Result<GradedMatrix> {
    let id = GradedMatrix::identity(&source);
    times(&id, f, source, target)
}

/// Maps β_i : A_i -> B_(i-1)(d), 1 ≤ i ≤ g, with β_g = (-1)^(g+1) and
/// β_i∘a_(i+1) = b_i∘β_(i+1); `result[i - 1]` is β_i.
pub fn compute_beta(a: &ChainComplex, b: &ChainComplex, d: i64) -> Result<Vec<GradedMatrix>> {
    let g = a.length() as isize;
    if b.length() as isize != g - 1 || a.module(g).rank() != 1 || b.module(g - 1).rank() != 1 {
        return Err(Error::PrecondFailed("resolutions are not Gorenstein of lengths g and g - 1".into()));
    }
    let ring = a.ring().clone();
    let sign = if g % 2 == 1 { 1 } else { -1 };
    let top = GradedMatrix::new(a.module(g), b.module(g - 1).twist(-d), vec![vec![ring_constant(&ring, sign)]])?;
    let mut beta = vec![top];
    for i in (1..g).rev() {
        let rhs = b.map(i).twist(-d).compose(&beta[0])?;
        let xt = a.map(i + 1).transpose(0).lift(&rhs.transpose(0))?;
        let x = xt.transpose(0);
        debug_assert!(x.compose(&a.map(i + 1))? == rhs);
        beta.insert(0, x);
    }
    Ok(beta)
}

fn ring_constant(ring: &Ring, c: i64) -> Polynomial {
    Polynomial::constant(ring, ring.scalar(c))
}

/// β_i∘a_(i+1) = b_i∘β_(i+1) for 1 ≤ i ≤ g - 1.
pub fn beta_commutes(a: &ChainComplex, b: &ChainComplex, beta: &[GradedMatrix], d: i64) -> bool {
    (1..beta.len()).all(|i| {
        let left = beta[i - 1].compose(&a.map(i as isize + 1));
        let right = b.map(i as isize).twist(-d).compose(&beta[i]);
        matches!((left, right), (Ok(l), Ok(r)) if l == r)
    })
}

/// Homotopy h_i : B_i -> B_i(d), 0 ≤ i ≤ g - 1, with h_0 = 0 and
/// β_i∘α_i = h_(i-1)∘b_i + b_i∘h_i. The flag reports whether h_(g-1) = 0.
pub fn compute_h(b: &ChainComplex, alpha: &ChainMap, beta: &[GradedMatrix], d: i64) -> Result<(Vec<GradedMatrix>, bool)> {
    let target = b.twist(-d);
    let len = b.length() as isize;
    let mut comps = vec![GradedMatrix::zero(b.module(0), target.module(-1))];
    for i in 1..=len {
        comps.push(beta[i as usize - 1].compose(&alpha.component(i))?);
    }
    let phi = ChainMap::new(b.clone(), target.clone(), -1, comps)?;
    let mut h = null_homotopy(&phi)?;
    let last = len as usize;
    let top_zero = if last == 0 {
        true
    } else {
        let prev = h[last - 1].compose(&b.map(len))?;
        if prev == phi.component(len) {
            h[last] = GradedMatrix::zero(b.module(len), target.module(len));
            true
        } else {
            h[last].is_zero()
        }
    };
    Ok((h, top_zero))
}

/// β_i∘α_i = h_(i-1)∘b_i + b_i∘h_i for 1 ≤ i ≤ g - 1.
pub fn homotopy_holds(b: &ChainComplex, alpha: &ChainMap, beta: &[GradedMatrix], h: &[GradedMatrix], d: i64) -> bool {
    let target = b.twist(-d);
    (1..h.len()).all(|i| {
        let ii = i as isize;
        let check = || -> Result<bool> {
            let left = beta[i - 1].compose(&alpha.component(ii))?;
            let right = h[i - 1].compose(&b.map(ii))?.add(&target.map(ii).compose(&h[i])?)?;
            Ok(left == right)
        };
        check().unwrap_or(false)
    })
}

/// β, h, the complex 𝕃 and the resolution obtained from it.
#[derive(Debug, Clone)]
pub struct KMData {
    pub g: usize,
    pub d: i64,
    /// `beta[i - 1]` is β_i.
    pub beta: Vec<GradedMatrix>,
    /// `h[i]` is h_i.
    pub h: Vec<GradedMatrix>,
    pub h_top_zero: bool,
    /// The f entering the differentials, solved so that the image of l_1 is I.
    pub f: Polynomial,
    pub full: ChainComplex,
    pub resolution: ChainComplex,
}

/// The complex 𝕃 with
/// l_1 = [b_1, β_1 + f a_1] and l_k = [[b_k, β_k, h_(k-1) + (-1)^k f], [0, -a_k, -α_(k-1)], [0, 0, b_(k-1)]].
pub fn build_l(
    a: &ChainComplex,
    b: &ChainComplex,
    alpha: &ChainMap,
    beta: &[GradedMatrix],
    h: &[GradedMatrix],
    f: &Polynomial,
    d: i64,
) -> Result<ChainComplex> {
    let g = a.length() as isize;
    let bd = |i: isize| b.module(i).twist(-d);
    let m_mod = |k: isize| if k == 1 { a.module(1) } else { a.module(k).direct_sum(&b.module(k - 1)) };
    let mut maps = Vec::new();
    let l1 = {
        let fa = times(&a.map(1), f, a.module(1), bd(0))?;
        let psi = beta[0].add(&fa)?;
        b.map(1).twist(-d).hstack(&psi)?
    };
    maps.push(l1);
    for k in 2..=g {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let fid = scaled_identity(&f.scale_int(sign), b.module(k - 1), bd(k - 1))?;
        let psi = beta[k as usize - 1].hstack(&h[k as usize - 1].add(&fid)?)?;
        let dm = if k == 2 {
            a.map(2).hstack(&alpha.component(1))?
        } else {
            let top = a.map(k).hstack(&alpha.component(k - 1))?;
            let bottom = GradedMatrix::zero(a.module(k), b.module(k - 2)).hstack(&b.map(k - 1).neg())?;
            top.vstack(&bottom)?
        };
        let top = b.map(k).twist(-d).hstack(&psi)?;
        let bottom = GradedMatrix::zero(bd(k), m_mod(k - 1)).hstack(&dm.neg())?;
        let l = top.vstack(&bottom)?;
        maps.push(l);
    }
    ChainComplex::new(bd(0), maps)
}

/// Builds β, h, 𝕃, splits A_g against B_(g-1)(d) and twists back, giving a
/// resolution of R/I with F_1 = B_1 ⊕ A_1(-d).
pub fn assemble_resolution(data: &BiliaisonData) -> Result<KMData> {
    let i_ideal = data.ideal().ok_or_else(|| Error::PrecondFailed("construction has not been run".into()))?;
    let (a, b, d, g) = (&data.a_res, &data.b_res, data.d, data.g);
    let beta = compute_beta(a, b, d)?;
    let (h, h_top_zero) = compute_h(b, &data.alpha, &beta, d)?;
    let beta1 = beta[0].rows()[0].clone();
    let a1 = a.map(1).rows()[0].clone();
    let f = find_multiplier(i_ideal, &data.b, &beta1, &a1, d)?.ok_or_else(|| {
        Error::IdealMismatch(format!("no f of degree {d} makes 𝔟 + (β_1 + f·a_1) equal to {}", i_ideal))
    })?;
    let full = build_l(a, b, &data.alpha, &beta, &h, &f, d)?;
    let mut modules = full.modules().to_vec();
    let mut maps = full.maps().to_vec();
    let top = g - 1;
    if !maps[top].entry(0, 0).is_unit() {
        return Err(Error::PrecondFailed("top block of l_g is not a unit".into()));
    }
    cancel_unit(&mut modules, &mut maps, top, 0, 0);
    let reduced = ChainComplex::new(modules[0].clone(), maps)?;
    Ok(KMData { g, d, beta, h, h_top_zero, f, full, resolution: reduced.twist(d) })
}

/// Ranks of the assembled resolution: F_1 = B_1 ⊕ A_1, F_k = B_k ⊕ A_k ⊕ B_(k-1)
/// for 2 ≤ k ≤ g - 1 (with B_(g-1) cancelled in F_(g-1)) and F_g = B_(g-1).
pub fn expected_ranks(a: &ChainComplex, b: &ChainComplex) -> Vec<usize> {
    let g = a.length() as isize;
    let rb = |i: isize| if i <= g - 2 { b.module(i).rank() } else { 0 };
    let mut out = vec![1];
    for k in 1..g {
        let prev = if k >= 2 { b.module(k - 1).rank() } else { 0 };
        out.push(rb(k) + a.module(k).rank() + prev);
    }
    out.push(b.module(g - 1).rank());
    out
}

/// True iff f is not a unit and no α_i (1 ≤ i ≤ g - 1) has a unit entry; in
/// that case the assembled resolution must be minimal with the Betti table of
/// resolve(I), and a violation is an error.
pub fn minimality_check(data: &BiliaisonData, km: &KMData) -> Result<bool> {
    let f_unit = km.f.is_unit();
    let alpha_minimal = (1..km.g as isize).all(|i| data.alpha.component(i).unit_entry().is_none());
    if f_unit || !alpha_minimal {
        return Ok(false);
    }
    for (k, d) in km.resolution.maps().iter().enumerate() {
        if d.unit_entry().is_some() {
            return Err(Error::NotMinimal(k + 1));
        }
    }
    let ours = BettiTable::from_complex(&km.resolution)?;
    let direct = match &data.i_res {
        Some(c) => BettiTable::from_complex(c)?,
        None => BettiTable::from_complex(&resolve(data.ideal().unwrap())?)?,
    };
    if ours != direct {
        return Err(Error::IdealMismatch(format!("Betti tables differ:\n{ours}\nvs\n{direct}")));
    }
    Ok(true)
}

/// The three checks behind the biliaison reading of the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BiliaisonCertificate {
    pub b_in_i: bool,
    pub grade_step: bool,
    pub hilbert_shift: bool,
}

impl BiliaisonCertificate {
    pub fn holds(&self) -> bool {
        self.b_in_i && self.grade_step && self.hilbert_shift
    }
}

/// 𝔟 ⊆ I, grade 𝔞 = grade 𝔟 + 1 and h_{I/𝔟}(j) = h_{𝔞/𝔟}(j - d) on the
/// checked window.
pub fn biliaison_certificate(data: &BiliaisonData) -> Result<BiliaisonCertificate> {
    biliaison_certificate_with_shift(data, data.d)
}

/// [`biliaison_certificate`] with an arbitrary shift in place of d.
pub fn biliaison_certificate_with_shift(data: &BiliaisonData, d: i64) -> Result<BiliaisonCertificate> {
    let i = data.ideal().ok_or_else(|| Error::PrecondFailed("construction has not been run".into()))?;
    let upto = check_window(data)?;
    let (hi, ha, hb) = (i.hilbert(), data.a.hilbert(), data.b.hilbert());
    let hilbert_shift = (0..=upto).all(|j| hb.value(j) - hi.value(j) == hb.value(j - d) - ha.value(j - d));
    Ok(BiliaisonCertificate {
        b_in_i: data.b.is_subset_of(i)?,
        grade_step: data.a.grade() == data.b.grade() + 1,
        hilbert_shift,
    })
}

/// Necessary condition for obtaining I from 𝔞 by the construction:
/// reg I - reg 𝔞 is even and nonnegative.
pub fn parity_necessary_condition(reg_i: i64, reg_a: i64) -> bool {
    let diff = reg_i - reg_a;
    diff >= 0 && diff % 2 == 0
}
