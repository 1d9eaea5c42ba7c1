//! Smith normal form with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::matrix::IMatrix;

/// `u * a * v = d` with `d` diagonal, nonnegative, `d[i] | d[i+1]`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IMatrix,
    pub v: IMatrix,
    /// Diagonal entries, length `min(rows, cols)`.
    pub diag: Vec<BigInt>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith(a: &IMatrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IMatrix::identity(m);
    let mut v = IMatrix::identity(n);
    let k_max = m.min(n);
    let mut k = 0;
    while k < k_max {
        // pivot: smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in k..m {
            for j in k..n {
                let x = d.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);

        let mut clean = true;
        for i in k + 1..m {
            if d.get(i, k).is_zero() {
                continue;
            }
            let q = d.get(i, k).div_floor(d.get(k, k));
            row_sub(&mut d, i, k, &q);
            row_sub(&mut u, i, k, &q);
            if !d.get(i, k).is_zero() {
                clean = false;
            }
        }
        for j in k + 1..n {
            if d.get(k, j).is_zero() {
                continue;
            }
            let q = d.get(k, j).div_floor(d.get(k, k));
            col_sub(&mut d, j, k, &q);
            col_sub(&mut v, j, k, &q);
            if !d.get(k, j).is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold an offending row into row k and retry
        let piv = d.get(k, k).clone();
        let offender = (k + 1..m)
            .find(|&i| (k + 1..n).any(|j| !(d.get(i, j) % &piv).is_zero()));
        if let Some(i) = offender {
            let one = -BigInt::from(1);
            row_sub(&mut d, k, i, &one);
            row_sub(&mut u, k, i, &one);
            continue;
        }
        if piv.is_negative() {
            for j in 0..n {
                let x = -d.get(k, j);
                d.set(k, j, x);
            }
            for j in 0..m {
                let x = -u.get(k, j);
                u.set(k, j, x);
            }
        }
        k += 1;
    }
    let diag = (0..k_max).map(|i| d.get(i, i).clone()).collect();
    Smith { u, v, diag }
}

fn row_sub(m: &mut IMatrix, target: usize, src: usize, q: &BigInt) {
    for j in 0..m.cols() {
        let x = m.get(target, j) - q * m.get(src, j);
        m.set(target, j, x);
    }
}

fn col_sub(m: &mut IMatrix, target: usize, src: usize, q: &BigInt) {
    for i in 0..m.rows() {
        let x = m.get(i, target) - q * m.get(i, src);
        m.set(i, target, x);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(a: &IMatrix) -> Smith {
        let s = smith(a);
        let d = s.u.mul(a).unwrap().mul(&s.v).unwrap();
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i != j {
                    assert!(d.get(i, j).is_zero());
                }
            }
        }
        for w in s.diag.windows(2) {
            if !w[1].is_zero() {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
        assert!(s.u.det().abs().is_one() && s.v.det().abs().is_one());
        s
    }

    #[test]
    fn invariant_factors() {
        let a = IMatrix::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = check(&a);
        let d: Vec<i64> = s.diag.iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
    }

    #[test]
    fn coprime_diagonal_merges() {
        let a = IMatrix::from_i64(&[vec![2, 0], vec![0, 3]]);
        let s = check(&a);
        assert_eq!(s.diag, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn rectangular() {
        let a = IMatrix::from_i64(&[vec![1, 2, 3], vec![4, 5, 6]]);
        let s = check(&a);
        assert_eq!(s.rank(), 2);
    }
}
