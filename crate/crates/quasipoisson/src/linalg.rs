//! Dense exact linear algebra over any [`Scalar`] (rationals, jets).
//!
//! Matrices are `Vec<Vec<T>>`, row major. Dimensions in this crate stay
//! small (≤ a few dozen), so plain Gaussian elimination is fine.

use crate::jet::Scalar;
use crate::rational::Rat;

pub type Mat<T> = Vec<Vec<T>>;

pub fn zeros<T: Scalar>(r: usize, c: usize) -> Mat<T> {
    vec![vec![T::zero(); c]; r]
}

pub fn identity<T: Scalar>(n: usize) -> Mat<T> {
    let mut m = zeros(n, n);
    for (i, item) in m.iter_mut().enumerate() {
        item[i] = T::one();
    }
    m
}

pub fn mat_mul<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> Mat<T> {
    let (n, k) = (a.len(), b.len());
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = zeros::<T>(n, m);
    for i in 0..n {
        for (l, brow) in b.iter().enumerate().take(k) {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if brow[j].is_zero() {
                    continue;
                }
                out[i][j] = out[i][j].add(&a[i][l].mul(&brow[j]));
            }
        }
    }
    out
}

pub fn mat_add<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> Mat<T> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.add(y)).collect())
        .collect()
}

pub fn mat_sub<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> Mat<T> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.sub(y)).collect())
        .collect()
}

pub fn mat_neg<T: Scalar>(a: &Mat<T>) -> Mat<T> {
    a.iter().map(|r| r.iter().map(|x| x.neg()).collect()).collect()
}

pub fn mat_scale<T: Scalar>(a: &Mat<T>, c: &T) -> Mat<T> {
    a.iter().map(|r| r.iter().map(|x| x.mul(c)).collect()).collect()
}

pub fn transpose<T: Scalar>(a: &Mat<T>) -> Mat<T> {
    if a.is_empty() {
        return vec![];
    }
    let (n, m) = (a.len(), a[0].len());
    let mut out = zeros(m, n);
    for i in 0..n {
        for j in 0..m {
            out[j][i] = a[i][j].clone();
        }
    }
    out
}

pub fn mat_vec<T: Scalar>(a: &Mat<T>, v: &[T]) -> Vec<T> {
    a.iter()
        .map(|row| {
            let mut acc = T::zero();
            for (x, y) in row.iter().zip(v) {
                acc = acc.add(&x.mul(y));
            }
            acc
        })
        .collect()
}

pub fn trace<T: Scalar>(a: &Mat<T>) -> T {
    let mut acc = T::zero();
    for (i, row) in a.iter().enumerate() {
        acc = acc.add(&row[i]);
    }
    acc
}

/// Matrix commutator `ab − ba`.
pub fn commutator<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> Mat<T> {
    mat_sub(&mat_mul(a, b), &mat_mul(b, a))
}

/// Inverse by Gauss–Jordan; `None` if singular (over jets: base part singular).
pub fn inverse<T: Scalar>(a: &Mat<T>) -> Option<Mat<T>> {
    let n = a.len();
    let mut m = a.clone();
    let mut inv = identity::<T>(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r][col].inv().is_some())?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let pinv = m[col][col].inv()?;
        for j in 0..n {
            m[col][j] = m[col][j].mul(&pinv);
            inv[col][j] = inv[col][j].mul(&pinv);
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..n {
                m[r][j] = m[r][j].sub(&f.mul(&m[col][j]));
                inv[r][j] = inv[r][j].sub(&f.mul(&inv[col][j]));
            }
        }
    }
    Some(inv)
}

/// Rank over the rationals.
pub fn rank(a: &Mat<Rat>) -> usize {
    if a.is_empty() {
        return 0;
    }
    let mut m = a.clone();
    let (rows, cols) = (m.len(), m[0].len());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pinv = m[r][c].inv().unwrap();
        for j in c..cols {
            m[r][j] = m[r][j].mul(&pinv);
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                m[i][j] = m[i][j].sub(&f.mul(&m[r][j]));
            }
        }
        r += 1;
    }
    r
}

pub fn det(a: &Mat<Rat>) -> Rat {
    let n = a.len();
    let mut m = a.clone();
    let mut d = crate::rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return crate::rational::zero();
        };
        if p != c {
            m.swap(c, p);
            d = d.neg();
        }
        d = d.mul(&m[c][c]);
        let pinv = m[c][c].inv().unwrap();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].mul(&pinv);
            for j in c..n {
                m[i][j] = m[i][j].sub(&f.mul(&m[c][j]));
            }
        }
    }
    d
}

/// Solve `A x = b` when `A` is square invertible.
pub fn solve(a: &Mat<Rat>, b: &[Rat]) -> Option<Vec<Rat>> {
    inverse(a).map(|inv| mat_vec(&inv, b))
}

/// Is `v` in the column span of `basis` (vectors as rows)?
pub fn in_row_span(basis: &Mat<Rat>, v: &[Rat]) -> bool {
    if basis.is_empty() {
        return v.iter().all(|x| x.is_zero());
    }
    let r0 = rank(basis);
    let mut ext = basis.clone();
    ext.push(v.to_vec());
    rank(&ext) == r0
}

/// Express `v` in terms of the rows of `basis`; `None` if not in the span or
/// the representation is not unique (rows dependent).
pub fn coords_in_row_basis(basis: &Mat<Rat>, v: &[Rat]) -> Option<Vec<Rat>> {
    // Solve basisᵀ c = v by augmenting and eliminating.
    let k = basis.len();
    if k == 0 {
        return if v.iter().all(|x| x.is_zero()) {
            Some(vec![])
        } else {
            None
        };
    }
    let n = basis[0].len();
    // Build the normal system via elimination on the n×k transpose.
    let mut aug: Mat<Rat> = (0..n)
        .map(|j| {
            let mut row: Vec<Rat> = (0..k).map(|i| basis[i][j].clone()).collect();
            row.push(v[j].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let pinv = aug[r][c].inv().unwrap();
        for j in c..=k {
            aug[r][j] = aug[r][j].mul(&pinv);
        }
        for i in 0..n {
            if i == r || aug[i][c].is_zero() {
                continue;
            }
            let f = aug[i][c].clone();
            for j in c..=k {
                aug[i][j] = aug[i][j].sub(&f.mul(&aug[r][j]));
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    // Inconsistent rows?
    for i in r..n {
        if !aug[i][k].is_zero() {
            return None;
        }
    }
    if pivots.len() != k {
        return None; // dependent rows; caller treats as failure
    }
    let mut out = vec![crate::rational::zero(); k];
    for (row, col) in pivots {
        out[col] = aug[row][k].clone();
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn inverse_small() {
        let a = vec![vec![int(2), int(1)], vec![int(3), int(2)]];
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity::<Rat>(2));
        assert_eq!(det(&a), int(1));
    }

    #[test]
    fn rank_and_span() {
        let b = vec![vec![int(1), int(0), int(1)], vec![int(0), int(1), int(1)]];
        assert_eq!(rank(&b), 2);
        assert!(in_row_span(&b, &[int(2), int(3), int(5)]));
        assert!(!in_row_span(&b, &[int(0), int(0), int(1)]));
        let c = coords_in_row_basis(&b, &[int(2), int(3), int(5)]).unwrap();
        assert_eq!(c, vec![int(2), int(3)]);
        let _ = rat(1, 2);
    }
}
