use super::complex::ChainComplex;
use super::matrix::GradedMatrix;
use super::module::GradedFreeModule;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::rings::Polynomial;

/// Minimal graded free resolution of R/I by iterated minimal syzygies.
pub fn resolve(ideal: &Ideal) -> Result<ChainComplex> {
    let ring = ideal.ring().clone();
    let base = GradedFreeModule::base(&ring);
    let gens = ideal.minimal_generators();
    if gens.is_empty() {
        return ChainComplex::new(base, Vec::new());
    }
    let cap = ring.nvars() + 1;
    let mut maps = vec![GradedMatrix::row_vector(&ring, gens)?];
    loop {
        let k = maps.last().unwrap().kernel();
        if k.ncols() == 0 {
            break;
        }
        if maps.len() >= cap {
            return Err(Error::ResolutionTooLong(maps.len()));
        }
        maps.push(k);
    }
    let c = ChainComplex::new(base, maps)?;
    minimalize(&c)
}

/// Cancels unit entries until no differential has one.
pub fn minimalize(c: &ChainComplex) -> Result<ChainComplex> {
    c.check_square_zero()?;
    let mut modules: Vec<GradedFreeModule> = c.modules().to_vec();
    let mut maps: Vec<GradedMatrix> = c.maps().to_vec();
    loop {
        let mut pivot = None;
        for (k, d) in maps.iter().enumerate() {
            if let Some(p) = markowitz_pivot(d) {
                pivot = Some((k, p));
                break;
            }
        }
        let Some((k, (r, col))) = pivot else { break };
        cancel_unit(&mut modules, &mut maps, k, r, col);
    }
    let base = modules[0].clone();
    ChainComplex::new(base, maps)
}

/// Splits off the pair of free summands joined by the unit entry (r, col) of
/// maps[k] = d_(k+1) : F_(k+1) -> F_k.
pub(crate) fn cancel_unit(modules: &mut [GradedFreeModule], maps: &mut [GradedMatrix], k: usize, r: usize, col: usize) {
    let d = &maps[k];
    let u_inv = d.entry(r, col).constant_value().unwrap().inv().unwrap();
    let mut rows = Vec::with_capacity(d.nrows() - 1);
    for a in 0..d.nrows() {
        if a == r {
            continue;
        }
        let dac = d.entry(a, col);
        let mut row = Vec::with_capacity(d.ncols() - 1);
        for b in 0..d.ncols() {
            if b == col {
                continue;
            }
            let e = if dac.is_zero() || d.entry(r, b).is_zero() {
                d.entry(a, b).clone()
            } else {
                d.entry(a, b) - &(dac * d.entry(r, b)).scale(&u_inv)
            };
            row.push(e);
        }
        rows.push(row);
    }
    let source = d.source().remove(col);
    let target = d.target().remove(r);
    maps[k] = GradedMatrix::from_parts_unchecked(source.clone(), target.clone(), rows);
    if k + 1 < maps.len() {
        maps[k + 1] = maps[k + 1].remove_row(col);
    }
    if k >= 1 {
        maps[k - 1] = maps[k - 1].remove_column(r);
    }
    modules[k] = target;
    modules[k + 1] = source;
}

/// Unit entry minimizing (row count - 1) * (column count - 1) of nonzeros.
fn markowitz_pivot(d: &GradedMatrix) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), usize)> = None;
    for i in 0..d.nrows() {
        for j in 0..d.ncols() {
            if !d.entry(i, j).is_unit() {
                continue;
            }
            let rn = (0..d.ncols()).filter(|&b| !d.entry(i, b).is_zero()).count();
            let cn = (0..d.nrows()).filter(|&a| !d.entry(a, j).is_zero()).count();
            let cost = (rn - 1) * (cn - 1);
            if best.is_none_or(|(_, c)| cost < c) {
                best = Some(((i, j), cost));
            }
        }
    }
    best.map(|(p, _)| p)
}

/// Outcome of [`verify_resolution`], with a located witness on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionCheck {
    pub ok: bool,
    pub witness: Option<String>,
}

impl ResolutionCheck {
    fn fail(msg: String) -> ResolutionCheck {
        ResolutionCheck { ok: false, witness: Some(msg) }
    }
}

/// Certifies that `c` is a free resolution of R/I: d*d = 0, the image of d_1
/// is I, and every kernel is spanned by the next differential.
pub fn verify_resolution(c: &ChainComplex, ideal: &Ideal) -> ResolutionCheck {
    let ring = ideal.ring();
    if let Err(e) = c.check_square_zero() {
        return ResolutionCheck::fail(e.to_string());
    }
    if c.module(0) != GradedFreeModule::base(ring) {
        return ResolutionCheck::fail(format!("F_0 is {}, not R", c.module(0)));
    }
    let d1_ideal = match c.map(1).entry_ideal() {
        Ok(i) => i,
        Err(e) => return ResolutionCheck::fail(e.to_string()),
    };
    if !d1_ideal.equals(ideal) {
        return ResolutionCheck::fail(format!("image of d_1 is {} but the ideal is {}", d1_ideal, ideal));
    }
    for i in 1..=c.length() as isize {
        let k = c.map(i).kernel();
        if k.ncols() == 0 {
            continue;
        }
        let next = c.map(i + 1);
        let spanned = if next.ncols() == 0 { Ok(false) } else { next.spans(&k) };
        match spanned {
            Ok(true) => {}
            Ok(false) => {
                let col: Vec<Polynomial> = k.column(0);
                let mut witness = None;
                for j in 0..k.ncols() {
                    let single = k.select_columns(&[j]);
                    if next.ncols() == 0 || !next.spans(&single).unwrap_or(false) {
                        witness = Some(single.column(0));
                        break;
                    }
                }
                let w = witness.unwrap_or(col);
                let rendered: Vec<String> = w.iter().map(|p| p.to_string()).collect();
                return ResolutionCheck::fail(format!(
                    "homology at F_{i}: syzygy ({}) is not in the image of d_{}",
                    rendered.join(", "),
                    i + 1
                ));
            }
            Err(e) => return ResolutionCheck::fail(e.to_string()),
        }
    }
    ResolutionCheck { ok: true, witness: None }
}
