//! Exact linear algebra over the rationals.
//!
//! Elimination uses the fraction-free Bareiss scheme on a denominator-cleared
//! integer matrix, which keeps intermediate entries to single determinant
//! size instead of letting gcd-reduction churn on every step.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    ShapeMismatch,
    NotSquare,
    NotSymmetric,
}

impl fmt::Display for LinAlgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinAlgError::ShapeMismatch => write!(f, "matrix shape mismatch"),
            LinAlgError::NotSquare => write!(f, "matrix is not square"),
            LinAlgError::NotSymmetric => write!(f, "matrix is not symmetric"),
        }
    }
}

fn rows_consistent(m: &[Vec<Rat>]) -> bool {
    m.iter().all(|r| r.len() == m[0].len())
}

/// Clear denominators row by row, returning an integer matrix with the same
/// row space (each row scaled by the lcm of its denominators).
fn clear_rows(m: &[Vec<Rat>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let mut l = BigInt::one();
            for x in row {
                l = l.lcm(x.denom());
            }
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect()
        })
        .collect()
}

/// Exact determinant of a square rational matrix.
pub fn det(m: &[Vec<Rat>]) -> Result<Rat, LinAlgError> {
    let n = m.len();
    if !rows_consistent(m) || m.iter().any(|r| r.len() != n) {
        return Err(LinAlgError::NotSquare);
    }
    if n == 0 {
        return Ok(Rat::one());
    }
    // Scale factor per row: det(int matrix) = det(m) * prod(row lcms).
    let mut scale = Rat::one();
    for row in m {
        let mut l = BigInt::one();
        for x in row {
            l = l.lcm(x.denom());
        }
        scale *= Rat::from_integer(l);
    }
    let mut a = clear_rows(m);
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(Rat::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev; // exact by Bareiss
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = Rat::from_integer(a[n - 1][n - 1].clone());
    Ok(d * Rat::from_integer(BigInt::from(sign)) / scale)
}

/// Leading principal minors are all positive. Requires a symmetric input.
pub fn is_positive_definite(m: &[Vec<Rat>]) -> Result<bool, LinAlgError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(LinAlgError::NotSquare);
    }
    for i in 0..n {
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return Err(LinAlgError::NotSymmetric);
            }
        }
    }
    for k in 1..=n {
        let lead: Vec<Vec<Rat>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
        if !det(&lead)?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Row-reduce the augmented rational matrix in place (Gauss-Jordan).
/// Returns the pivot column of each pivot row.
fn rref(a: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &f * &a[r][j];
                    a[i][j] = &a[i][j] - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solve `m x = rhs` exactly. Returns `None` iff the system has no unique
/// solution (inconsistent, or rank below the number of unknowns).
pub fn solve(m: &[Vec<Rat>], rhs: &[Rat]) -> Result<Option<Vec<Rat>>, LinAlgError> {
    let rows = m.len();
    if rows != rhs.len() || !rows_consistent(m) {
        return Err(LinAlgError::ShapeMismatch);
    }
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    // Inconsistent if some pivot lands in the rhs column.
    if pivots.last().is_some_and(|&c| c == cols) {
        return Ok(None);
    }
    if pivots.len() < cols {
        return Ok(None);
    }
    let mut x = vec![Rat::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Ok(Some(x))
}

/// Rank of a rational matrix.
pub fn rank(m: &[Vec<Rat>]) -> usize {
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    rref(&mut a).len()
}

/// Inverse of a square matrix, or `None` if singular.
pub fn invert(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { Rat::one() } else { Rat::zero() });
            }
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of the null space `{x : m x = 0}`.
pub fn null_space(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let pivots = rref(&mut a);
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    for free in 0..cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -a[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Matrix-vector product.
pub fn mat_vec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Matrix product.
pub fn mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

/// Transpose.
pub fn transpose(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rfrac, rint};

    fn m2(a: i64, b: i64, c: i64, d: i64) -> Vec<Vec<Rat>> {
        vec![vec![rint(a), rint(b)], vec![rint(c), rint(d)]]
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let id = m2(1, 0, 0, 1);
        let rhs = vec![rfrac(3, 2), rint(-5)];
        assert_eq!(solve(&id, &rhs).unwrap().unwrap(), rhs);
    }

    #[test]
    fn solve_a2_gram() {
        // [[2,-1],[-1,2]] x = (1,1)  =>  x = (1,1)
        let m = m2(2, -1, -1, 2);
        let rhs = vec![rint(1), rint(1)];
        assert_eq!(solve(&m, &rhs).unwrap().unwrap(), rhs);
    }

    #[test]
    fn solve_singular_is_none() {
        let m = m2(1, 1, 1, 1);
        assert_eq!(solve(&m, &[rint(1), rint(0)]).unwrap(), None);
        // singular but consistent: still no unique solution
        assert_eq!(solve(&m, &[rint(1), rint(1)]).unwrap(), None);
    }

    #[test]
    fn positive_definite_examples() {
        assert!(is_positive_definite(&m2(2, -1, -1, 2)).unwrap());
        assert!(!is_positive_definite(&m2(2, -2, -2, 2)).unwrap());
        assert!(is_positive_definite(&[vec![rint(1)]]).unwrap());
        assert!(matches!(
            is_positive_definite(&m2(1, 2, 3, 4)),
            Err(LinAlgError::NotSymmetric)
        ));
    }

    #[test]
    fn det_with_rational_entries() {
        let m = vec![vec![rfrac(1, 2), rint(1)], vec![rint(1), rint(4)]];
        assert_eq!(det(&m).unwrap(), rint(1));
    }

    #[test]
    fn invert_round_trip() {
        let m = m2(2, -1, -1, 2);
        let inv = invert(&m).unwrap();
        let prod = mat_mul(&m, &inv);
        assert_eq!(prod, m2(1, 0, 0, 1));
        assert!(invert(&m2(1, 1, 1, 1)).is_none());
    }

    #[test]
    fn null_space_of_rank_one() {
        let m = vec![vec![rint(1), rint(1)]];
        let ns = null_space(&m);
        assert_eq!(ns.len(), 1);
        assert_eq!(mat_vec(&m, &ns[0]), vec![rint(0)]);
    }
}
