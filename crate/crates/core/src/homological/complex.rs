use std::fmt;

use super::matrix::GradedMatrix;
use super::module::GradedFreeModule;
use crate::error::{Error, Result};
use crate::rings::Ring;

/// F_0 <- F_1 <- ... <- F_n with differentials d_1, ..., d_n.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainComplex {
    ring: Ring,
    modules: Vec<GradedFreeModule>,
    maps: Vec<GradedMatrix>,
}

impl ChainComplex {
    /// Builds a complex from d_1, ..., d_n; checks composability and d*d = 0.
    pub fn new(base: GradedFreeModule, maps: Vec<GradedMatrix>) -> Result<ChainComplex> {
        let ring = base.ring().clone();
        let mut modules = vec![base];
        for (k, d) in maps.iter().enumerate() {
            if d.target() != &modules[k] {
                return Err(Error::ShapeMismatch(format!(
                    "d_{} maps into {} but F_{} is {}",
                    k + 1,
                    d.target(),
                    k,
                    modules[k]
                )));
            }
            modules.push(d.source().clone());
        }
        let c = ChainComplex { ring, modules, maps };
        c.check_square_zero()?;
        Ok(c.trimmed())
    }

    /// The complex 0 <- R <- R(-t_1) + ... of a row of generators.
    pub fn from_maps(maps: Vec<GradedMatrix>) -> Result<ChainComplex> {
        let base = maps.first().map(|d| d.target().clone()).ok_or_else(|| Error::ShapeMismatch("no maps".into()))?;
        Self::new(base, maps)
    }

    /// Drops trailing zero modules.
    fn trimmed(mut self) -> ChainComplex {
        while !self.maps.is_empty() && self.modules.last().is_some_and(|m| m.is_zero()) {
            self.modules.pop();
            self.maps.pop();
        }
        self
    }

    pub fn check_square_zero(&self) -> Result<()> {
        for i in 1..self.maps.len() {
            let dd = self.maps[i - 1].compose(&self.maps[i])?;
            if !dd.is_zero() {
                return Err(Error::ComplexCheckFailed { index: i });
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Index of the last module.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// F_i; the zero module outside `0..=length`.
    pub fn module(&self, i: isize) -> GradedFreeModule {
        if i < 0 || i as usize >= self.modules.len() {
            GradedFreeModule::zero(&self.ring)
        } else {
            self.modules[i as usize].clone()
        }
    }

    pub fn modules(&self) -> &[GradedFreeModule] {
        &self.modules
    }

    /// d_i : F_i -> F_{i-1}; the zero map outside `1..=length`.
    pub fn map(&self, i: isize) -> GradedMatrix {
        if i >= 1 && (i as usize) <= self.maps.len() {
            self.maps[i as usize - 1].clone()
        } else {
            GradedMatrix::zero(self.module(i), self.module(i - 1))
        }
    }

    pub fn maps(&self) -> &[GradedMatrix] {
        &self.maps
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.rank()).collect()
    }

    /// C(-s).
    pub fn twist(&self, s: i64) -> ChainComplex {
        ChainComplex {
            ring: self.ring.clone(),
            modules: self.modules.iter().map(|m| m.twist(s)).collect(),
            maps: self.maps.iter().map(|d| d.twist(s)).collect(),
        }
    }

    /// No differential has a unit entry.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|d| d.unit_entry().is_none())
    }

    /// Hom(C, R)(s) re-indexed so that D_i = F_{n-i}^*(s).
    pub fn dual_twist(&self, s: i64) -> ChainComplex {
        let n = self.maps.len();
        let modules = (0..=n).map(|i| self.modules[n - i].dual(s)).collect();
        let maps = (1..=n).map(|i| self.maps[n - i].transpose(s)).collect();
        ChainComplex { ring: self.ring.clone(), modules, maps }
    }

}

impl fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `R <- R^2(-1) <- R(-2)` style rendering.
impl fmt::Display for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.modules.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(" <- "))
    }
}

/// Maps phi_i : F_i -> G_{i+shift}, commuting as d^G phi_i = phi_{i-1} d^F.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    shift: isize,
    maps: Vec<GradedMatrix>,
}

impl ChainMap {
    /// `maps[i]` is phi_i for i = 0..=source.length().
    pub fn new(source: ChainComplex, target: ChainComplex, shift: isize, maps: Vec<GradedMatrix>) -> Result<ChainMap> {
        if maps.len() != source.length() + 1 {
            return Err(Error::ShapeMismatch(format!(
                "{} component maps for a complex of length {}",
                maps.len(),
                source.length()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            let i = i as isize;
            if m.source() != &source.module(i) || m.target() != &target.module(i + shift) {
                return Err(Error::ShapeMismatch(format!("component {i} has the wrong shape")));
            }
        }
        Ok(ChainMap { source, target, shift, maps })
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn shift(&self) -> isize {
        self.shift
    }

    /// phi_i; zero outside the stored range.
    pub fn component(&self, i: isize) -> GradedMatrix {
        if i >= 0 && (i as usize) < self.maps.len() {
            self.maps[i as usize].clone()
        } else {
            GradedMatrix::zero(self.source.module(i), self.target.module(i + self.shift))
        }
    }

    pub fn components(&self) -> &[GradedMatrix] {
        &self.maps
    }

    /// First index i >= 1 where d^G phi_i != phi_{i-1} d^F, if any.
    pub fn failing_square(&self) -> Option<usize> {
        for i in 1..=self.source.length() as isize {
            let left = self.target.map(i + self.shift).compose(&self.component(i));
            let right = self.component(i - 1).compose(&self.source.map(i));
            match (left, right) {
                (Ok(l), Ok(r)) if l == r => {}
                _ => return Some(i as usize),
            }
        }
        None
    }

    pub fn commutes(&self) -> bool {
        self.failing_square().is_none()
    }
}

/// Lifts phi_0 : F_0 -> G_0 to a chain map F -> G, degree by degree.
pub fn lift_chain_map(f: &ChainComplex, g: &ChainComplex, phi0: &GradedMatrix) -> Result<ChainMap> {
    let mut maps = vec![phi0.clone()];
    for i in 1..=f.length() as isize {
        let rhs = maps[i as usize - 1].compose(&f.map(i))?;
        let d = g.map(i);
        let next = if d.ncols() == 0 {
            if !rhs.is_zero() {
                return Err(Error::NoLift { column: 0 });
            }
            GradedMatrix::zero(f.module(i), g.module(i))
        } else {
            d.lift(&rhs)?
        };
        maps.push(next);
    }
    ChainMap::new(f.clone(), g.clone(), 0, maps)
}

/// Maps h_i : F_i -> G_{i+s+1} with phi_i = d^G h_i + h_{i-1} d^F, where s is
/// the shift of `phi`; h_i = 0 whenever i + s + 1 <= 0.
pub fn null_homotopy(phi: &ChainMap) -> Result<Vec<GradedMatrix>> {
    let (f, g, s) = (phi.source(), phi.target(), phi.shift());
    let mut hs: Vec<GradedMatrix> = Vec::new();
    for i in 0..=f.length() as isize {
        let h = if i + s < 0 {
            GradedMatrix::zero(f.module(i), g.module(i + s + 1))
        } else {
            let prev = if i == 0 {
                GradedMatrix::zero(f.module(-1), g.module(s))
            } else {
                hs[i as usize - 1].clone()
            };
            let rhs = phi.component(i).sub(&prev.compose(&f.map(i))?)?;
            let d = g.map(i + s + 1);
            if d.ncols() == 0 {
                if !rhs.is_zero() {
                    return Err(Error::NoLift { column: 0 });
                }
                GradedMatrix::zero(f.module(i), g.module(i + s + 1))
            } else {
                d.lift(&rhs)?
            }
        };
        hs.push(h);
    }
    Ok(hs)
}

/// Checks phi_i = d^G h_i + h_{i-1} d^F for every i.
pub fn is_null_homotopy(phi: &ChainMap, hs: &[GradedMatrix]) -> bool {
    let (f, g, s) = (phi.source(), phi.target(), phi.shift());
    for i in 0..=f.length() as isize {
        let h = &hs[i as usize];
        let left = g.map(i + s + 1).compose(h);
        let right = if i == 0 { None } else { Some(hs[i as usize - 1].compose(&f.map(i))) };
        let total = match (left, right) {
            (Ok(l), None) => l,
            (Ok(l), Some(Ok(r))) => match l.add(&r) {
                Ok(t) => t,
                Err(_) => return false,
            },
            _ => return false,
        };
        if total != phi.component(i) {
            return false;
        }
    }
    true
}

/// Cone of a degree-preserving chain map phi : F -> G (shift 0):
/// cone_i = G_i + F_{i-1}, with differential [[d^G_i, phi_{i-1}], [0, -d^F_{i-1}]].
pub fn mapping_cone(phi: &ChainMap) -> Result<ChainComplex> {
    if phi.shift() != 0 {
        return Err(Error::ShapeMismatch("mapping cone needs a map of shift 0".into()));
    }
    let (f, g) = (phi.source(), phi.target());
    let n = g.length().max(f.length() + 1) as isize;
    let cone_module = |i: isize| g.module(i).direct_sum(&f.module(i - 1));
    let mut maps = Vec::new();
    for i in 1..=n {
        let top = g.map(i).hstack(&phi.component(i - 1))?;
        let zero = GradedMatrix::zero(g.module(i), f.module(i - 2));
        let bottom = zero.hstack(&f.map(i - 1).neg())?;
        let d = top.vstack(&bottom)?;
        debug_assert!(d.source() == &cone_module(i) && d.target() == &cone_module(i - 1));
        maps.push(d);
    }
    ChainComplex::new(cone_module(0), maps)
}
