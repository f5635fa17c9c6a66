//! Small dense row-major matrices over a [`Scalar`] field.

use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds from row-major data. Panics if the length is wrong.
    pub fn from_rows(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Self { rows, cols, data }
    }

    pub fn diagonal(values: &[F]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    /// Hermitian transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, k: &F) -> Self {
        self.map(|x| x.clone() * k)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self::from_fn(self.rows, self.cols, |r, c| {
            self[(r, c)].clone() + &rhs[(r, c)]
        })
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self::from_fn(self.rows, self.cols, |r, c| {
            self[(r, c)].clone() - &rhs[(r, c)]
        })
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * b;
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.rows), |acc, _| acc.mul(self))
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        Self::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |r, c| {
            self[(r / rhs.rows, c / rhs.cols)].clone() * &rhs[(r % rhs.rows, c % rhs.cols)]
        })
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// `self - shift·I`.
    pub fn shifted(&self, shift: &F) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] = m[(i, i)].clone() - shift;
        }
        m
    }

    /// Row echelon reduction with exact pivoting; returns (echelon, rank, det sign·pivot product).
    fn eliminate(&self) -> (Self, usize, F) {
        let mut m = self.clone();
        let mut rank = 0;
        let mut det = F::one();
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(pivot) = (rank..self.rows).find(|&r| !m[(r, col)].is_zero()) else {
                det = F::zero();
                continue;
            };
            if pivot != rank {
                for c in 0..self.cols {
                    m.data.swap(pivot * self.cols + c, rank * self.cols + c);
                }
                det = -det;
            }
            let p = m[(rank, col)].clone();
            det = det * &p;
            let pinv = p.inv().expect("nonzero pivot");
            for r in rank + 1..self.rows {
                let f = m[(r, col)].clone() * &pinv;
                if f.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let v = m[(rank, c)].clone() * &f;
                    m[(r, c)] = m[(r, c)].clone() - v;
                }
            }
            rank += 1;
        }
        (m, rank, det)
    }

    /// Exact rank (structural zero tests).
    pub fn rank(&self) -> usize {
        self.eliminate().1
    }

    pub fn det(&self) -> F {
        assert!(self.is_square(), "determinant of non-square matrix");
        let (_, rank, det) = self.eliminate();
        if rank < self.rows {
            F::zero()
        } else {
            det
        }
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if pivot != col {
                for c in 0..n {
                    a.data.swap(pivot * n + c, col * n + c);
                    inv.data.swap(pivot * n + c, col * n + c);
                }
            }
            let pinv = a[(col, col)].inv()?;
            for c in 0..n {
                a[(col, c)] = a[(col, c)].clone() * &pinv;
                inv[(col, c)] = inv[(col, c)].clone() * &pinv;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for c in 0..n {
                    let av = a[(col, c)].clone() * &f;
                    a[(r, c)] = a[(r, c)].clone() - av;
                    let iv = inv[(col, c)].clone() * &f;
                    inv[(r, c)] = inv[(r, c)].clone() - iv;
                }
            }
        }
        Some(inv)
    }

    pub fn to_c64(&self) -> Matrix<Complex64> {
        self.map(|x| x.to_c64())
    }

    pub fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].to_c64())
    }
}

impl Matrix<Complex64> {
    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    fn m(rows: usize, cols: usize, v: &[i64]) -> Matrix<Exact> {
        Matrix::from_rows(rows, cols, v.iter().map(|&x| Exact::from_i64(x)).collect())
    }

    #[test]
    fn det_rank_inverse() {
        let a = m(3, 3, &[2, 1, 0, 1, 3, 1, 0, 1, 4]);
        assert_eq!(a.det(), Exact::from_i64(18));
        assert_eq!(a.rank(), 3);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        let s = m(2, 2, &[1, 2, 2, 4]);
        assert_eq!(s.rank(), 1);
        assert!(s.inverse().is_none());
        assert_eq!(s.det(), Exact::zero());
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = m(2, 2, &[1, 2, 3, 4]);
        let b = m(2, 2, &[0, 1, 1, 0]);
        let k = a.kron(&b);
        assert_eq!(k[(0, 1)], Exact::from_i64(1));
        assert_eq!(k[(3, 2)], Exact::from_i64(4));
        assert_eq!(k.det(), a.det().powi(2) * b.det().powi(2));
    }
}
