//! Dense exact matrices over Z and Q.

use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IMatrix = Mat<BigInt>;
pub type QMatrix = Mat<BigRational>;

impl<T: Clone + Zero> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<T>], height: usize) -> Result<Self> {
        let mut m = Self::zeros(height, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != height {
                return Err(Error::DimensionMismatch("column length".into()));
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Block diagonal sum.
    pub fn block_diag(blocks: &[&Self]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }
}

impl<T> Mat<T>
where
    T: Clone + Zero + One,
{
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }
}

impl<T> Mat<T>
where
    T: Clone + Zero,
    for<'a> &'a T: Mul<&'a T, Output = T> + Add<&'a T, Output = T>,
{
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = &out.data[i * other.cols + j] + &(a * b);
                    out.data[i * other.cols + j] = v;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch("matrix-vector".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(T::zero(), |acc, j| &acc + &(self.get(i, j) * &v[j]))
            })
            .collect())
    }

    /// `x^T M y`.
    pub fn bilinear(&self, x: &[T], y: &[T]) -> Result<T> {
        let my = self.mul_vec(y)?;
        if x.len() != my.len() {
            return Err(Error::DimensionMismatch("bilinear".into()));
        }
        Ok(x.iter().zip(&my).fold(T::zero(), |acc, (a, b)| &acc + &(a * b)))
    }

    /// `P^T M P` where the columns of `p` are the new basis.
    pub fn congruence(&self, p: &Self) -> Result<Self> {
        p.transpose().mul(self)?.mul(p)
    }
}

impl IMatrix {
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
            .expect("rectangular input")
    }

    pub fn to_q(&self) -> QMatrix {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| BigRational::from_integer(x.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    /// Row echelon form over Z by unimodular row operations.
    /// Returns `(E, U, pivots)` with `U * self = E`; pivot entries are
    /// positive and entries above pivots are reduced into `[0, pivot)`.
    pub fn echelon(&self) -> (IMatrix, IMatrix, Vec<usize>) {
        let mut e = self.clone();
        let mut u = IMatrix::identity(self.rows);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            loop {
                // smallest nonzero entry in column c at or below row r
                let best = (r..self.rows)
                    .filter(|&i| !e.get(i, c).is_zero())
                    .min_by(|&a, &b| e.get(a, c).abs().cmp(&e.get(b, c).abs()));
                let Some(p) = best else { break };
                e.swap_rows(p, r);
                u.swap_rows(p, r);
                let mut done = true;
                for i in r + 1..self.rows {
                    if e.get(i, c).is_zero() {
                        continue;
                    }
                    let q = e.get(i, c).div_floor(e.get(r, c));
                    row_axpy(&mut e, i, r, &q);
                    row_axpy(&mut u, i, r, &q);
                    if !e.get(i, c).is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if e.get(r, c).is_zero() {
                continue;
            }
            if e.get(r, c).is_negative() {
                row_negate(&mut e, r);
                row_negate(&mut u, r);
            }
            for i in 0..r {
                let q = e.get(i, c).div_floor(e.get(r, c));
                if !q.is_zero() {
                    row_axpy(&mut e, i, r, &q);
                    row_axpy(&mut u, i, r, &q);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (e, u, pivots)
    }

    /// Basis (as rows) of the Z-span of the rows of `self`.
    pub fn row_span_basis(&self) -> IMatrix {
        let (e, _, pivots) = self.echelon();
        e.submatrix(&(0..pivots.len()).collect::<Vec<_>>(), &(0..self.cols).collect::<Vec<_>>())
    }

    /// Z-basis of `{x : self * x = 0}`, returned as rows. The basis is
    /// saturated in Z^cols.
    pub fn integer_kernel(&self) -> Vec<Vec<BigInt>> {
        let (_, u, pivots) = self.transpose().echelon();
        (pivots.len()..self.cols).map(|i| u.row(i)).collect()
    }

    /// Inverse of a unimodular matrix.
    pub fn unimodular_inverse(&self) -> Result<IMatrix> {
        let inv = self.to_q().inverse().ok_or(Error::Degenerate("singular".into()))?;
        inv.to_integer().ok_or(Error::Degenerate("matrix is not unimodular".into()))
    }
}

fn row_axpy(m: &mut IMatrix, target: usize, src: usize, q: &BigInt) {
    for j in 0..m.cols {
        let v = m.get(target, j) - q * m.get(src, j);
        m.set(target, j, v);
    }
}

fn row_negate(m: &mut IMatrix, r: usize) {
    for j in 0..m.cols {
        let v = -m.get(r, j);
        m.set(r, j, v);
    }
}

impl QMatrix {
    pub fn to_integer(&self) -> Option<IMatrix> {
        let data: Option<Vec<BigInt>> =
            self.data.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect();
        Some(Mat { rows: self.rows, cols: self.cols, data: data? })
    }

    /// Reduced row echelon form; returns pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else { continue };
            a.swap_rows(p, r);
            let inv = a.get(r, c).recip();
            for j in 0..a.cols {
                let v = a.get(r, j) * &inv;
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in 0..a.cols {
                    let v = a.get(i, j) - &f * a.get(r, j);
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the rational kernel `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, BigRational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(&(0..n).collect::<Vec<_>>(), &(n..2 * n).collect::<Vec<_>>()))
    }

    pub fn det(&self) -> BigRational {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
                return BigRational::zero();
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det *= &piv;
            for i in c + 1..n {
                if a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c) / &piv;
                for j in c..n {
                    let v = a.get(i, j) - &f * a.get(c, j);
                    a.set(i, j, v);
                }
            }
        }
        det
    }
}

/// Dot product of two integer vectors.
pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_matches_rational_det() {
        let m = IMatrix::from_i64(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(m.det(), BigInt::from(4));
        assert_eq!(m.to_q().det(), BigRational::from_integer(BigInt::from(4)));
    }

    #[test]
    fn det_with_zero_pivot() {
        let m = IMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.det(), BigInt::from(-1));
    }

    #[test]
    fn echelon_transform_is_consistent() {
        let m = IMatrix::from_i64(&[vec![4, 6, 2], vec![2, 3, 7], vec![6, 9, 9]]);
        let (e, u, piv) = m.echelon();
        assert_eq!(u.mul(&m).unwrap(), e);
        assert_eq!(u.det().abs(), BigInt::one());
        assert_eq!(piv.len(), 2);
    }

    #[test]
    fn kernel_is_saturated() {
        let m = IMatrix::from_i64(&[vec![2, 4, 6]]);
        let k = m.integer_kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn rational_inverse_roundtrip() {
        let m = IMatrix::from_i64(&[vec![2, 1], vec![1, 1]]).to_q();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), QMatrix::identity(2));
    }
}
