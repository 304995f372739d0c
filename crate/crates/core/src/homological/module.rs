use std::fmt;

use crate::rings::{Ring, RingExt};

/// Free module R(-t_1) + ... + R(-t_r), stored by its generator degrees t_i.
#[derive(Clone)]
pub struct GradedFreeModule {
    ring: Ring,
    degrees: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(ring: &Ring, degrees: Vec<i64>) -> GradedFreeModule {
        GradedFreeModule { ring: ring.clone(), degrees }
    }

    pub fn zero(ring: &Ring) -> GradedFreeModule {
        Self::new(ring, Vec::new())
    }

    /// R itself.
    pub fn base(ring: &Ring) -> GradedFreeModule {
        Self::new(ring, vec![0])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Generator degrees; the twists are their negatives.
    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    /// M(-s): every generator degree raised by `s`.
    pub fn twist(&self, s: i64) -> GradedFreeModule {
        Self::new(&self.ring, self.degrees.iter().map(|t| t + s).collect())
    }

    /// Hom(M, R)(s): degrees negated, then lowered by `s`.
    pub fn dual(&self, s: i64) -> GradedFreeModule {
        Self::new(&self.ring, self.degrees.iter().map(|t| -t - s).collect())
    }

    pub fn direct_sum(&self, other: &GradedFreeModule) -> GradedFreeModule {
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        Self::new(&self.ring, degrees)
    }

    pub fn remove(&self, index: usize) -> GradedFreeModule {
        let mut degrees = self.degrees.clone();
        degrees.remove(index);
        Self::new(&self.ring, degrees)
    }

    pub fn select(&self, indices: &[usize]) -> GradedFreeModule {
        Self::new(&self.ring, indices.iter().map(|&i| self.degrees[i]).collect())
    }
}

impl PartialEq for GradedFreeModule {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.degrees == other.degrees
    }
}

impl Eq for GradedFreeModule {}

impl fmt::Debug for GradedFreeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `R^2(-3) + R(-4)` style rendering, grouping equal consecutive twists.
impl fmt::Display for GradedFreeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degrees.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        let mut k = 0;
        while k < self.degrees.len() {
            let t = self.degrees[k];
            let mut m = k;
            while m < self.degrees.len() && self.degrees[m] == t {
                m += 1;
            }
            let count = m - k;
            let base = if count == 1 { "R".to_string() } else { format!("R^{count}") };
            parts.push(if t == 0 { base } else { format!("{base}({})", -t) });
            k = m;
        }
        write!(f, "{}", parts.join(" + "))
    }
}
