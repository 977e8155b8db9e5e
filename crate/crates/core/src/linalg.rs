//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{as_integer, q, Q};

pub type QMatrix = Vec<Vec<Q>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut QMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Q>]) -> usize {
    let mut m = m.to_vec();
    rref(&mut m).len()
}

/// Solves the square system `m x = b`; `None` when singular.
pub fn solve(m: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = m.len();
    let mut aug: QMatrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv.iter().any(|&c| c >= n) {
        return None;
    }
    Some(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// A basis of the null space `{x : m x = 0}`.
pub fn kernel(m: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let mut r = m.to_vec();
    let piv = rref(&mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (row, &pc) in piv.iter().enumerate() {
                v[pc] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &a[c][j] * &f;
                a[i][j] -= t;
            }
        }
    }
    d
}

pub fn to_q_matrix(m: &[Vec<i64>]) -> QMatrix {
    m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

/// Determinant of an integer matrix by cofactor-free fraction-free elimination.
pub fn det_i64(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        _ => as_integer(&det(&to_q_matrix(m))).expect("integer determinant"),
    }
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let d = det_i64(m);
    if d.abs() != 1 {
        return Err(Error::NotUnimodular(d));
    }
    let n = m.len();
    let mut aug: QMatrix = to_q_matrix(m)
        .into_iter()
        .enumerate()
        .map(|(i, mut r)| {
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    rref(&mut aug);
    aug.iter()
        .map(|r| {
            r[n..]
                .iter()
                .map(|x| as_integer(x).ok_or(Error::NotUnimodular(d)))
                .collect()
        })
        .collect()
}

pub fn mat_vec_i(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub fn mat_vec_iq(m: &[Vec<i64>], v: &[Q]) -> Vec<Q> {
    m.iter().map(|r| crate::rational::dot_iq(r, v)).collect()
}

pub fn mat_mul_i(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|r| (0..n).map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum()).collect())
        .collect()
}

pub fn transpose_i(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.first().map_or(0, Vec::len);
    (0..n).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

pub fn identity_i(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_and_ranks() {
        let m = to_q_matrix(&[vec![2, 1], vec![1, 3]]);
        let x = solve(&m, &[q(3), q(4)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        assert_eq!(rank(&to_q_matrix(&[vec![1, 2], vec![2, 4]])), 1);
        assert!(solve(&to_q_matrix(&[vec![1, 2], vec![2, 4]]), &[q(1), q(1)]).is_none());
    }

    #[test]
    fn kernel_of_a_row() {
        let k = kernel(&to_q_matrix(&[vec![1, 1, 0]]), 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!((&v[0] + &v[1]).is_zero());
        }
    }

    #[test]
    fn determinants_agree() {
        let m = vec![vec![1, 2, 0, 1], vec![0, 1, 3, 0], vec![2, 0, 1, 1], vec![1, 1, 1, 1]];
        assert_eq!(as_integer(&det(&to_q_matrix(&m))).unwrap(), det_i64(&m));
        let m3 = vec![vec![2, -1, 0], vec![1, 3, 2], vec![0, 1, 1]];
        assert_eq!(as_integer(&det(&to_q_matrix(&m3))).unwrap(), det_i64(&m3));
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let m = vec![vec![-1, 0], vec![4, -1]];
        let inv = unimodular_inverse(&m).unwrap();
        assert_eq!(mat_mul_i(&m, &inv), identity_i(2));
        assert!(unimodular_inverse(&[vec![2, 0], vec![0, 1]]).is_err());
    }
}
