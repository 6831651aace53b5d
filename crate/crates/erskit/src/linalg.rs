//! Dense Gaussian elimination over an exact field.

use num_traits::{One, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exact field scalars. Implemented for the rational types and the
/// cyclotomic field.
pub trait Field:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Field for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
{
}

/// Reduced row echelon form in place. Returns the pivot columns.
pub fn rref<T: Field>(m: &mut [Vec<T>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
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
        let inv = T::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let v = m[r][j].clone() * f.clone();
                    m[i][j] = m[i][j].clone() - v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: Field>(m: &[Vec<T>]) -> usize {
    let mut w = m.to_vec();
    rref(&mut w).len()
}

pub fn det<T: Field>(m: &[Vec<T>]) -> T {
    let n = m.len();
    let mut w = m.to_vec();
    let mut acc = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !w[i][c].is_zero()) else {
            return T::zero();
        };
        if p != c {
            w.swap(c, p);
            acc = -acc;
        }
        let piv = w[c][c].clone();
        acc = acc * piv.clone();
        for i in c + 1..n {
            if w[i][c].is_zero() {
                continue;
            }
            let f = w[i][c].clone() / piv.clone();
            for j in c..n {
                let v = w[c][j].clone() * f.clone();
                w[i][j] = w[i][j].clone() - v;
            }
        }
    }
    acc
}

/// Basis of the right kernel {x : m x = 0}.
pub fn kernel<T: Field>(m: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    let mut w = m.to_vec();
    let pivots = rref(&mut w);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -w[r][f].clone();
            }
            v
        })
        .collect()
}

/// Solve m x = b, returning one solution if consistent.
pub fn solve<T: Field>(m: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<T>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![T::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn inverse<T: Field>(m: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let n = m.len();
    let mut aug: Vec<Vec<T>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64 as Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    #[test]
    fn det_and_inverse_agree() {
        let m = vec![vec![q(2), q(-1)], vec![q(-1), q(2)]];
        assert_eq!(det(&m), q(3));
        let inv = inverse(&m).unwrap();
        assert_eq!(inv[0][0], Q::new(2, 3));
        assert_eq!(inv[0][1], Q::new(1, 3));
    }

    #[test]
    fn kernel_of_affine_a2() {
        let m = vec![
            vec![q(2), q(-1), q(-1)],
            vec![q(-1), q(2), q(-1)],
            vec![q(-1), q(-1), q(2)],
        ];
        let k = kernel(&m, 3);
        assert_eq!(k, vec![vec![q(1), q(1), q(1)]]);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(solve(&m, &[q(1), q(3)]).is_none());
        assert_eq!(solve(&m, &[q(1), q(2)]).unwrap(), vec![q(1), q(0)]);
    }
}
