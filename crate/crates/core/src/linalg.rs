//! Dense exact linear algebra over the rationals.

use num_traits::{One, Signed, Zero};

use crate::rational::Q;

pub type Matrix = Vec<Vec<Q>>;

pub fn from_int(m: &[Vec<i64>]) -> Matrix {
    m.iter().map(|row| row.iter().map(|&x| crate::rational::q(x)).collect()).collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![Q::zero(); m]; n];
    for i in 0..n {
        for (l, brow) in b.iter().enumerate() {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][l] * &brow[j];
            }
        }
    }
    out
}

pub fn mat_vec(a: &Matrix, v: &[Q]) -> Vec<Q> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// Gauss-Jordan inverse; `None` when singular.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut work: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !work[r][col].is_zero())?;
        work.swap(col, pivot);
        let inv = Q::one() / &work[col][col];
        for x in work[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !work[r][col].is_zero() {
                let f = work[r][col].clone();
                for c in 0..2 * n {
                    let d = &f * &work[col][c];
                    work[r][c] -= d;
                }
            }
        }
    }
    Some(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Row rank by exact Gaussian elimination.
pub fn rank(a: &Matrix) -> usize {
    let mut m = a.clone();
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[r][c];
            for j in c..cols {
                let d = &f * &m[r][j];
                m[i][j] -= d;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Positive definiteness via the pivots of elimination without row swaps.
pub fn is_positive_definite(a: &Matrix) -> bool {
    let n = a.len();
    let mut m = a.clone();
    for k in 0..n {
        if !m[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            let f = &m[i][k] / &m[k][k];
            for j in k..n {
                let d = &f * &m[k][j];
                m[i][j] -= d;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};

    #[test]
    fn inverse_of_a2_cartan() {
        let c = from_int(&[vec![2, -1], vec![-1, 2]]);
        let inv = inverse(&c).unwrap();
        assert_eq!(inv[0][0], q_frac(2, 3));
        assert_eq!(inv[0][1], q_frac(1, 3));
        assert_eq!(mul(&inv, &c), identity(2));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = from_int(&[vec![1, 2], vec![2, 4]]);
        assert!(inverse(&m).is_none());
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn definiteness() {
        assert!(is_positive_definite(&from_int(&[vec![2, -1], vec![-1, 2]])));
        // affine A1
        assert!(!is_positive_definite(&from_int(&[vec![2, -2], vec![-2, 2]])));
        assert_eq!(rank(&vec![vec![q(0), q(0)]]), 0);
    }
}
