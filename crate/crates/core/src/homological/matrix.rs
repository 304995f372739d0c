use std::fmt;

use super::module::GradedFreeModule;
use crate::error::{Error, Result};
use crate::groebner::engine::{self, GbOptions, ModuleOrder, Reducer, Term, Vector};
use crate::groebner::Ideal;
use crate::rings::{Homogeneity, Polynomial, Ring, RingExt};

/// Degree-zero homogeneous map between graded free modules. Entry (i, j) is
/// zero or homogeneous of degree `source_j - target_i`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedMatrix {
    source: GradedFreeModule,
    target: GradedFreeModule,
    rows: Vec<Vec<Polynomial>>,
}

impl GradedMatrix {
    pub fn new(source: GradedFreeModule, target: GradedFreeModule, rows: Vec<Vec<Polynomial>>) -> Result<GradedMatrix> {
        if rows.len() != target.rank() {
            return Err(Error::ShapeMismatch(format!("{} rows for a target of rank {}", rows.len(), target.rank())));
        }
        if !source.ring().same(target.ring()) {
            return Err(Error::RingMismatch);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != source.rank() {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has {} entries for a source of rank {}",
                    row.len(),
                    source.rank()
                )));
            }
            for (j, e) in row.iter().enumerate() {
                if !e.ring().same(source.ring()) {
                    return Err(Error::RingMismatch);
                }
                let expected = source.degree(j) - target.degree(i);
                let found = match e.homogeneity() {
                    Homogeneity::Zero => continue,
                    Homogeneity::Degree(d) => Some(d as i64),
                    Homogeneity::Inhomogeneous => None,
                };
                if found != Some(expected) {
                    return Err(Error::DegreeMismatch { row: i, col: j, expected, found });
                }
            }
        }
        Ok(GradedMatrix { source, target, rows })
    }

    /// Columns given as vectors in the target; the source degrees are inferred
    /// (zero columns get degree `zero_degree`).
    pub fn from_columns(target: GradedFreeModule, cols: Vec<Vec<Polynomial>>, zero_degree: i64) -> Result<GradedMatrix> {
        let mut degrees = Vec::with_capacity(cols.len());
        for col in &cols {
            let d = col
                .iter()
                .enumerate()
                .find(|(_, e)| !e.is_zero())
                .map(|(i, e)| e.homogeneous_degree().map(|d| d as i64 + target.degree(i)));
            degrees.push(match d {
                None => zero_degree,
                Some(Some(d)) => d,
                Some(None) => return Err(Error::Inhomogeneous(format!("{:?}", col))),
            });
        }
        let source = GradedFreeModule::new(target.ring(), degrees);
        let rows = (0..target.rank()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        Self::new(source, target, rows)
    }

    /// The 1 x r matrix R(-deg g_1) + ... -> R of a list of homogeneous forms.
    pub fn row_vector(ring: &Ring, gens: &[Polynomial]) -> Result<GradedMatrix> {
        let target = GradedFreeModule::base(ring);
        Self::from_columns(target, gens.iter().map(|g| vec![g.clone()]).collect(), 0)
    }

    pub(crate) fn from_parts_unchecked(source: GradedFreeModule, target: GradedFreeModule, rows: Vec<Vec<Polynomial>>) -> GradedMatrix {
        debug_assert!(Self::new(source.clone(), target.clone(), rows.clone()).is_ok());
        GradedMatrix { source, target, rows }
    }

    pub fn zero(source: GradedFreeModule, target: GradedFreeModule) -> GradedMatrix {
        let ring = source.ring().clone();
        let rows = vec![vec![Polynomial::zero(&ring); source.rank()]; target.rank()];
        GradedMatrix { source, target, rows }
    }

    pub fn identity(module: &GradedFreeModule) -> GradedMatrix {
        let ring = module.ring().clone();
        let n = module.rank();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Polynomial::one(&ring) } else { Polynomial::zero(&ring) }).collect())
            .collect();
        GradedMatrix { source: module.clone(), target: module.clone(), rows }
    }

    /// Multiplication by a homogeneous form of degree e, as M(-e) -> M.
    pub fn scalar_map(module: &GradedFreeModule, f: &Polynomial) -> Result<GradedMatrix> {
        let e = match f.homogeneity() {
            Homogeneity::Degree(d) => d as i64,
            Homogeneity::Zero => 0,
            Homogeneity::Inhomogeneous => return Err(Error::Inhomogeneous(f.to_string())),
        };
        Ok(Self::identity(module).scale(f, module.twist(e)))
    }

    pub fn ring(&self) -> &Ring {
        self.source.ring()
    }

    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    pub fn nrows(&self) -> usize {
        self.target.rank()
    }

    pub fn ncols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|e| e.is_zero()))
    }

    /// Position of some unit entry.
    pub fn unit_entry(&self) -> Option<(usize, usize)> {
        for (i, r) in self.rows.iter().enumerate() {
            for (j, e) in r.iter().enumerate() {
                if e.is_unit() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Composition `self * other` (apply `other` first).
    pub fn compose(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if other.target != self.source {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose: {} vs {}",
                other.target, self.source
            )));
        }
        let ring = self.ring().clone();
        let mut rows = Vec::with_capacity(self.nrows());
        for i in 0..self.nrows() {
            let mut row = Vec::with_capacity(other.ncols());
            for j in 0..other.ncols() {
                let mut acc = Polynomial::zero(&ring);
                for k in 0..self.ncols() {
                    let (a, b) = (&self.rows[i][k], &other.rows[k][j]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                row.push(acc);
            }
            rows.push(row);
        }
        Ok(GradedMatrix { source: other.source.clone(), target: self.target.clone(), rows })
    }

    fn check_same_shape(&self, other: &GradedMatrix) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch(format!(
                "{} -> {} vs {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        self.check_same_shape(other)?;
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect();
        Ok(GradedMatrix { source: self.source.clone(), target: self.target.clone(), rows })
    }

    pub fn sub(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        self.check_same_shape(other)?;
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect()).collect();
        Ok(GradedMatrix { source: self.source.clone(), target: self.target.clone(), rows })
    }

    pub fn neg(&self) -> GradedMatrix {
        let rows = self.rows.iter().map(|r| r.iter().map(|e| -e).collect()).collect();
        GradedMatrix { source: self.source.clone(), target: self.target.clone(), rows }
    }

    /// Entrywise multiplication by `f`, with the given new source module.
    pub fn scale(&self, f: &Polynomial, new_source: GradedFreeModule) -> GradedMatrix {
        let rows = self.rows.iter().map(|r| r.iter().map(|e| e * f).collect()).collect();
        GradedMatrix { source: new_source, target: self.target.clone(), rows }
    }

    pub fn scale_int(&self, k: i64) -> GradedMatrix {
        let rows = self.rows.iter().map(|r| r.iter().map(|e| e.scale_int(k)).collect()).collect();
        GradedMatrix { source: self.source.clone(), target: self.target.clone(), rows }
    }

    /// The same entries regarded as a map between twisted modules.
    pub fn twist(&self, s: i64) -> GradedMatrix {
        GradedMatrix { source: self.source.twist(s), target: self.target.twist(s), rows: self.rows.clone() }
    }

    /// Reinterprets the source and target (same ranks); entry degrees are rechecked.
    pub fn with_modules(&self, source: GradedFreeModule, target: GradedFreeModule) -> Result<GradedMatrix> {
        Self::new(source, target, self.rows.clone())
    }

    /// Transpose as a map of duals twisted by `s`: Hom(target, R)(s) -> Hom(source, R)(s).
    pub fn transpose(&self, s: i64) -> GradedMatrix {
        let rows = (0..self.ncols()).map(|j| (0..self.nrows()).map(|i| self.rows[i][j].clone()).collect()).collect();
        GradedMatrix { source: self.target.dual(s), target: self.source.dual(s), rows }
    }

    /// Horizontal concatenation [self other] (same target).
    pub fn hstack(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if self.target != other.target {
            return Err(Error::ShapeMismatch("hstack needs equal targets".into()));
        }
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a.iter().chain(b).cloned().collect()).collect();
        Ok(GradedMatrix { source: self.source.direct_sum(&other.source), target: self.target.clone(), rows })
    }

    /// Vertical concatenation [self; other] (same source).
    pub fn vstack(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if self.source != other.source {
            return Err(Error::ShapeMismatch("vstack needs equal sources".into()));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(GradedMatrix { source: self.source.clone(), target: self.target.direct_sum(&other.target), rows })
    }

    /// Block matrix [[a, b], [c, d]].
    pub fn block(a: &GradedMatrix, b: &GradedMatrix, c: &GradedMatrix, d: &GradedMatrix) -> Result<GradedMatrix> {
        a.hstack(b)?.vstack(&c.hstack(d)?)
    }

    pub fn remove_row(&self, i: usize) -> GradedMatrix {
        let mut rows = self.rows.clone();
        rows.remove(i);
        GradedMatrix { source: self.source.clone(), target: self.target.remove(i), rows }
    }

    pub fn remove_column(&self, j: usize) -> GradedMatrix {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.remove(j);
                r
            })
            .collect();
        GradedMatrix { source: self.source.remove(j), target: self.target.clone(), rows }
    }

    pub fn select_columns(&self, cols: &[usize]) -> GradedMatrix {
        let rows = self.rows.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect();
        GradedMatrix { source: self.source.select(cols), target: self.target.clone(), rows }
    }

    pub fn select_rows(&self, rows_idx: &[usize]) -> GradedMatrix {
        let rows = rows_idx.iter().map(|&i| self.rows[i].clone()).collect();
        GradedMatrix { source: self.source.clone(), target: self.target.select(rows_idx), rows }
    }

    /// Ideal generated by all entries.
    pub fn entry_ideal(&self) -> Result<Ideal> {
        let gens = self.rows.iter().flat_map(|r| r.iter().cloned()).collect();
        Ideal::new(self.ring(), gens)
    }

    // ---- Gröbner-backed operations ----

    fn column_vectors(&self, offset: usize) -> Vec<Vector> {
        (0..self.ncols())
            .map(|j| {
                let mut v = Vec::new();
                for i in 0..self.nrows() {
                    for (m, c) in self.rows[i][j].terms() {
                        v.push(Term { mono: m.clone(), comp: i + offset, coeff: c.clone() });
                    }
                }
                v
            })
            .collect()
    }

    /// Augmented vectors [column_j ; e_j] in target + source with the target block on top.
    fn augmented(&self) -> (ModuleOrder, Vec<Vector>) {
        let r = self.nrows();
        let mut twists: Vec<i64> = self.target.degrees().to_vec();
        twists.extend_from_slice(self.source.degrees());
        let order = ModuleOrder { ring: self.ring().clone(), twists, split: Some(r) };
        let one = self.ring().field().one();
        let unit = self.ring().one_monomial();
        let mut vecs = self.column_vectors(0);
        for (j, v) in vecs.iter_mut().enumerate() {
            v.push(Term { mono: unit.clone(), comp: r + j, coeff: one.clone() });
        }
        let vecs = vecs.into_iter().map(|v| order.canonicalize(v)).collect();
        (order, vecs)
    }

    fn vectors_to_columns(&self, module: &GradedFreeModule, vecs: &[Vector], offset: usize) -> Vec<Vec<Polynomial>> {
        let ring = self.ring();
        vecs.iter()
            .map(|v| {
                let mut col: Vec<Vec<(crate::rings::Monomial, crate::rings::Scalar)>> = vec![Vec::new(); module.rank()];
                for t in v {
                    col[t.comp - offset].push((t.mono.clone(), t.coeff.clone()));
                }
                col.into_iter().map(|terms| Polynomial::from_terms(ring, terms)).collect()
            })
            .collect()
    }

    /// Minimal homogeneous generators of ker(self), as a map into the source.
    pub fn kernel(&self) -> GradedMatrix {
        let r = self.nrows();
        let (order, vecs) = self.augmented();
        let gb = engine::groebner(&order, &vecs, GbOptions::default());
        let lower: Vec<Vector> = gb
            .basis
            .into_iter()
            .filter(|v| !order.in_upper_block(v[0].comp))
            .map(|v| v.into_iter().map(|t| Term { comp: t.comp - r, ..t }).collect())
            .collect();
        let sorder = ModuleOrder { ring: self.ring().clone(), twists: self.source.degrees().to_vec(), split: None };
        let lower: Vec<Vector> = lower.into_iter().map(|v| sorder.canonicalize(v)).collect();
        let min = engine::groebner(&sorder, &lower, GbOptions { mingens: true, ..Default::default() });
        let chosen: Vec<Vector> = min.mingens.iter().map(|&k| lower[k].clone()).collect();
        let cols = self.vectors_to_columns(&self.source, &chosen, 0);
        GradedMatrix::from_columns(self.source.clone(), cols, 0).expect("kernel vectors are homogeneous")
    }

    /// Minimal generators of the column span (a submodule of the target).
    pub fn minimal_columns(&self) -> GradedMatrix {
        let order = ModuleOrder { ring: self.ring().clone(), twists: self.target.degrees().to_vec(), split: None };
        let vecs: Vec<Vector> = self.column_vectors(0).into_iter().map(|v| order.canonicalize(v)).collect();
        let min = engine::groebner(&order, &vecs, GbOptions { mingens: true, ..Default::default() });
        let mut keep = min.mingens.clone();
        keep.sort_by_key(|&k| (self.source.degree(k), k));
        self.select_columns(&keep)
    }

    /// Solves `self * X = rhs`; fails with `NoLift` naming the first column of
    /// `rhs` outside the column span of `self`.
    pub fn lift(&self, rhs: &GradedMatrix) -> Result<GradedMatrix> {
        if rhs.target != self.target {
            return Err(Error::ShapeMismatch(format!("lift: targets {} and {} differ", self.target, rhs.target)));
        }
        let r = self.nrows();
        let ring = self.ring().clone();
        let mut cols: Vec<Vec<Polynomial>> = Vec::with_capacity(rhs.ncols());
        let rhs_vecs = rhs.column_vectors(0);
        if rhs_vecs.iter().all(|v| v.is_empty()) {
            return Ok(GradedMatrix::zero(rhs.source.clone(), self.source.clone()));
        }
        let (order, vecs) = self.augmented();
        let gb = engine::groebner(&order, &vecs, GbOptions { drop_lower_leads: true, ..Default::default() });
        let red = Reducer::new(&order, &gb.basis);
        for (k, v) in rhs_vecs.into_iter().enumerate() {
            if v.is_empty() {
                cols.push(vec![Polynomial::zero(&ring); self.ncols()]);
                continue;
            }
            let rem = red.reduce(order.canonicalize(v), true);
            if rem.iter().any(|t| order.in_upper_block(t.comp)) {
                return Err(Error::NoLift { column: k });
            }
            let neg: Vector = rem.into_iter().map(|t| Term { comp: t.comp - r, coeff: -&t.coeff, mono: t.mono }).collect();
            cols.extend(self.vectors_to_columns(&self.source, &[neg], 0));
        }
        let rows = (0..self.ncols()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        GradedMatrix::new(rhs.source.clone(), self.source.clone(), rows)
    }

    /// Whether every column of `other` lies in the column span of `self`.
    pub fn spans(&self, other: &GradedMatrix) -> Result<bool> {
        match self.lift(other) {
            Ok(_) => Ok(true),
            Err(Error::NoLift { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    }
}

impl fmt::Debug for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <- {} ", self.target, self.source)?;
        write!(f, "{self}")
    }
}

impl fmt::Display for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
