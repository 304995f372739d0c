//! Determinants and Pfaffians of small polynomial matrices.

use std::collections::HashMap;

use super::polynomial::Polynomial;
use super::ring::Ring;
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Row-major dense matrix of polynomials.
pub type PolyMatrix = Vec<Vec<Polynomial>>;

fn check_square(m: &PolyMatrix) -> Result<usize> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::NotSquare { rows: n, cols: row.len() });
        }
    }
    Ok(n)
}

/// Exact determinant by Laplace expansion along rows, memoized on the set of
/// used columns.
pub fn determinant(ring: &Ring, m: &PolyMatrix) -> Result<Polynomial> {
    let n = check_square(m)?;
    for row in m {
        for e in row {
            if !std::sync::Arc::ptr_eq(e.ring(), ring) && **e.ring() != **ring {
                return Err(Error::RingMismatch);
            }
        }
    }
    if n > 20 {
        return Err(Error::ShapeMismatch(format!("determinant of size {n} is too large")));
    }
    let mut memo = HashMap::new();
    Ok(det_rec(ring, m, 0, 0, &mut memo))
}

fn det_rec(ring: &Ring, m: &PolyMatrix, row: usize, used: u32, memo: &mut HashMap<u32, Polynomial>) -> Polynomial {
    let n = m.len();
    if row == n {
        return Polynomial::one(ring);
    }
    if let Some(p) = memo.get(&used) {
        return p.clone();
    }
    let mut acc = Polynomial::zero(ring);
    let mut sign_pos = true;
    for col in 0..n {
        if used & (1 << col) != 0 {
            continue;
        }
        let e = &m[row][col];
        if !e.is_zero() {
            let minor = det_rec(ring, m, row + 1, used | (1 << col), memo);
            let term = e * &minor;
            acc = if sign_pos { &acc + &term } else { &acc - &term };
        }
        sign_pos = !sign_pos;
    }
    memo.insert(used, acc.clone());
    acc
}

/// Submatrix deleting one row and one column (0-based).
pub fn delete_row_col(m: &PolyMatrix, row: usize, col: usize) -> PolyMatrix {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, e)| e.clone()).collect())
        .collect()
}

/// Submatrix on the given rows and columns.
pub fn submatrix(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> PolyMatrix {
    rows.iter().map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect()).collect()
}

pub fn is_skew_symmetric(m: &PolyMatrix) -> bool {
    let n = m.len();
    (0..n).all(|i| {
        m[i].len() == n && m[i][i].is_zero() && (0..i).all(|j| m[i][j] == -&m[j][i])
    })
}

/// Pfaffian of the principal submatrix on `rows` (0-based, taken in the given
/// order), by expansion along the first row.
pub fn pfaffian(ring: &Ring, m: &PolyMatrix, rows: &[usize]) -> Result<Polynomial> {
    check_square(m)?;
    if !is_skew_symmetric(m) {
        return Err(Error::NotSkewSymmetric);
    }
    if rows.len() % 2 == 1 {
        return Err(Error::OddSubset(rows.len()));
    }
    if rows.iter().any(|&r| r >= m.len()) {
        return Err(Error::ShapeMismatch("Pfaffian row index out of range".into()));
    }
    let mut memo = HashMap::new();
    Ok(pf_rec(ring, m, rows, &mut memo))
}

fn pf_rec(ring: &Ring, m: &PolyMatrix, rows: &[usize], memo: &mut HashMap<Vec<usize>, Polynomial>) -> Polynomial {
    if rows.is_empty() {
        return Polynomial::one(ring);
    }
    if let Some(p) = memo.get(rows) {
        return p.clone();
    }
    let first = rows[0];
    let mut acc = Polynomial::zero(ring);
    for k in 1..rows.len() {
        let e = &m[first][rows[k]];
        if e.is_zero() {
            continue;
        }
        let rest: Vec<usize> = rows[1..].iter().enumerate().filter(|(i, _)| *i + 1 != k).map(|(_, r)| *r).collect();
        let term = e * &pf_rec(ring, m, &rest, memo);
        // 1-based position of the partner is k + 1; sign (-1)^(k+1)
        acc = if k % 2 == 1 { &acc + &term } else { &acc - &term };
    }
    memo.insert(rows.to_vec(), acc.clone());
    acc
}

/// All Pfaffians of principal submatrices of size `k`, in lexicographic order
/// of row subsets.
pub fn pfaffians(ring: &Ring, m: &PolyMatrix, k: usize) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    for rows in subsets(m.len(), k) {
        out.push(pfaffian(ring, m, &rows)?);
    }
    Ok(out)
}

/// All `k`-minors, rows and columns in lexicographic order.
pub fn minors(ring: &Ring, m: &PolyMatrix, k: usize) -> Result<Vec<Polynomial>> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    for rows in subsets(m.len(), k) {
        for cols in subsets(ncols, k) {
            out.push(determinant(ring, &submatrix(m, &rows, &cols))?);
        }
    }
    Ok(out)
}

pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// One solution of the dense system `a * x = b` over a field, by Gauss-Jordan
/// elimination; free unknowns are set to zero.
pub fn solve_linear(field: Field, a: &[Vec<Scalar>], b: &[Scalar], ncols: usize) -> Option<Vec<Scalar>> {
    solve_affine(field, a, b, ncols).map(|(x, _)| x)
}

/// All solutions of `a * x = b`: a particular solution and a basis of the
/// kernel of `a`.
pub fn solve_affine(field: Field, a: &[Vec<Scalar>], b: &[Scalar], ncols: usize) -> Option<(Vec<Scalar>, Vec<Vec<Scalar>>)> {
    let mut rows: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut row = r.clone();
            row.push(v.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        let Some(p) = (top..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(top, p);
        let inv = rows[top][col].inv().unwrap();
        for v in rows[top].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows.len() {
            if i == top || rows[i][col].is_zero() {
                continue;
            }
            let k = rows[i][col].clone();
            for j in col..=ncols {
                let t = &k * &rows[top][j];
                rows[i][j] = &rows[i][j] - &t;
            }
        }
        pivots.push(col);
        top += 1;
    }
    if rows[top..].iter().any(|r| !r[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![field.zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][ncols].clone();
    }
    let mut kernel = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -&rows[i][free];
        }
        kernel.push(v);
    }
    Some((x, kernel))
}
