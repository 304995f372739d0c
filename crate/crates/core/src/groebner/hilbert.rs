use serde::Serialize;

/// Hilbert series N(t) / prod(1 - t^w_i) of a graded quotient R/I.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    numerator: Vec<i64>,
    weights: Vec<u32>,
    dim: usize,
}

impl HilbertData {
    pub(crate) fn new(numerator: Vec<i64>, weights: Vec<u32>, dim: usize) -> HilbertData {
        let mut numerator = numerator;
        while numerator.len() > 1 && numerator.last() == Some(&0) {
            numerator.pop();
        }
        HilbertData { numerator, weights, dim }
    }

    /// Coefficients of the numerator, lowest degree first.
    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Krull dimension of the quotient.
    pub fn dimension(&self) -> usize {
        self.dim
    }

    /// Values of the Hilbert function in degrees `0..=upto`.
    pub fn values(&self, upto: usize) -> Vec<i64> {
        let mut s = vec![0i64; upto + 1];
        for (k, c) in self.numerator.iter().enumerate().take(upto + 1) {
            s[k] = *c;
        }
        for &w in &self.weights {
            let w = w as usize;
            for j in w..=upto {
                s[j] += s[j - w];
            }
        }
        s
    }

    /// Hilbert function value; zero in negative degrees.
    pub fn value(&self, j: i64) -> i64 {
        if j < 0 {
            return 0;
        }
        self.values(j as usize)[j as usize]
    }

    /// Finite Hilbert function of an Artinian quotient.
    pub fn h_vector(&self) -> Option<Vec<i64>> {
        if self.dim != 0 {
            return None;
        }
        let mut v = self.values(self.numerator.len());
        while v.len() > 1 && v.last() == Some(&0) {
            v.pop();
        }
        if v == [0] {
            v.clear();
        }
        Some(v)
    }
}

/// Hilbert numerator of K[x]/M for a monomial ideal M, by pivot recursion.
pub(crate) fn monomial_numerator(gens: &[Vec<u16>], weights: &[u32]) -> Vec<i64> {
    let gens = minimize(gens.to_vec());
    numerator_rec(gens, weights)
}

fn deg(m: &[u16], weights: &[u32]) -> usize {
    m.iter().zip(weights).map(|(e, w)| *e as usize * *w as usize).sum()
}

fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn minimize(mut gens: Vec<Vec<u16>>) -> Vec<Vec<u16>> {
    gens.sort_by_key(|g| g.iter().map(|e| *e as u32).sum::<u32>());
    gens.dedup();
    let mut out: Vec<Vec<u16>> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| divides(h, &g)) {
            out.push(g);
        }
    }
    out
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn one_minus_t_pow(d: usize) -> Vec<i64> {
    let mut p = vec![0i64; d + 1];
    p[0] += 1;
    p[d] -= 1;
    p
}

fn numerator_rec(gens: Vec<Vec<u16>>, weights: &[u32]) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    let n = weights.len();
    let pairwise_coprime = {
        let mut used = vec![false; n];
        let mut ok = true;
        'outer: for g in &gens {
            for (i, e) in g.iter().enumerate() {
                if *e > 0 {
                    if used[i] {
                        ok = false;
                        break 'outer;
                    }
                    used[i] = true;
                }
            }
        }
        ok
    };
    if pairwise_coprime {
        let mut acc = vec![1i64];
        for g in &gens {
            acc = poly_mul(&acc, &one_minus_t_pow(deg(g, weights)));
        }
        return acc;
    }
    // pivot on the variable occurring in the most generators
    let mut counts = vec![0usize; n];
    for g in &gens {
        for (i, e) in g.iter().enumerate() {
            if *e > 0 {
                counts[i] += 1;
            }
        }
    }
    let var = (0..n).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    let mut exps: Vec<u16> = gens.iter().map(|g| g[var]).filter(|e| *e > 0).collect();
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2];
    let mut pivot = vec![0u16; n];
    pivot[var] = e;

    let mut plus = gens.clone();
    plus.push(pivot.clone());
    let plus = minimize(plus);
    let colon: Vec<Vec<u16>> = gens
        .iter()
        .map(|g| g.iter().zip(&pivot).map(|(a, b)| a.saturating_sub(*b)).collect())
        .collect();
    let colon = minimize(colon);

    let a = numerator_rec(plus, weights);
    let b = numerator_rec(colon, weights);
    let shift = deg(&pivot, weights);
    let mut out = vec![0i64; a.len().max(b.len() + shift)];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i + shift] += x;
    }
    out
}

/// Krull dimension of K[x]/M from maximal independent sets; `None` for the
/// unit ideal.
pub(crate) fn monomial_dimension(gens: &[Vec<u16>], n: usize) -> Option<usize> {
    if gens.iter().any(|g| g.iter().all(|e| *e == 0)) {
        return None;
    }
    let supports: Vec<u64> = gens
        .iter()
        .map(|g| g.iter().enumerate().filter(|(_, e)| **e > 0).fold(0u64, |m, (i, _)| m | (1 << i)))
        .collect();
    if n > 24 {
        return Some(dimension_dfs(&supports, n));
    }
    let mut best = 0usize;
    for s in 0u64..(1u64 << n) {
        let size = s.count_ones() as usize;
        if size <= best {
            continue;
        }
        if supports.iter().all(|m| m & !s != 0) {
            best = size;
        }
    }
    Some(best)
}

fn dimension_dfs(supports: &[u64], n: usize) -> usize {
    fn go(i: usize, n: usize, cur: u64, supports: &[u64], best: &mut usize) {
        let size = cur.count_ones() as usize;
        if size + (n - i) <= *best {
            return;
        }
        if i == n {
            *best = size;
            return;
        }
        let with = cur | (1 << i);
        if supports.iter().all(|m| m & !with != 0) {
            go(i + 1, n, with, supports, best);
        }
        go(i + 1, n, cur, supports, best);
    }
    let mut best = 0;
    go(0, n, 0, supports, &mut best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_ring_series() {
        let h = HilbertData::new(monomial_numerator(&[], &[1, 1, 1]), vec![1, 1, 1], 3);
        let expect: Vec<i64> = (0..8).map(|j| (j + 1) * (j + 2) / 2).collect();
        assert_eq!(h.values(7), expect);
    }

    #[test]
    fn complete_intersection_of_quadrics() {
        // in(b) = (x^2, y^2)
        let n = monomial_numerator(&[vec![2, 0, 0], vec![0, 2, 0]], &[1, 1, 1]);
        let h = HilbertData::new(n, vec![1, 1, 1], 1);
        assert_eq!(h.values(5), vec![1, 3, 4, 4, 4, 4]);
    }

    #[test]
    fn artinian_h_vector() {
        // (x^2, y^2, z^2, xy, xz, yz)
        let gens = vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2], vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]];
        let n = monomial_numerator(&gens, &[1, 1, 1]);
        assert_eq!(monomial_dimension(&gens, 3), Some(0));
        let h = HilbertData::new(n, vec![1, 1, 1], 0);
        assert_eq!(h.h_vector(), Some(vec![1, 3]));
    }

    #[test]
    fn brute_force_count_agrees() {
        let gens = vec![vec![3, 1, 0], vec![1, 2, 1], vec![0, 0, 4], vec![2, 0, 2], vec![0, 3, 0]];
        let n = monomial_numerator(&gens, &[1, 1, 1]);
        let h = HilbertData::new(n, vec![1, 1, 1], 0);
        for d in 0..9u16 {
            let mut count = 0;
            for a in 0..=d {
                for b in 0..=d - a {
                    let m = [a, b, d - a - b];
                    if !gens.iter().any(|g| divides(g, &m)) {
                        count += 1;
                    }
                }
            }
            assert_eq!(h.value(d as i64), count, "degree {d}");
        }
    }
}
