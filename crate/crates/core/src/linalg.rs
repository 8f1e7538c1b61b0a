//! Small dense complex matrices. Representation degrees stay tiny here, so a
//! row-major `Vec` is all that is needed.

use std::ops::{Index, IndexMut, Mul};

use crate::scalar::{c1, cz, C, Real};

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<C<T>>,
}

impl<T: Real> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![cz(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c1();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C<T>>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Self { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C<T>] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C<T> {
        (0..self.rows.min(self.cols)).fold(cz(), |acc, i| acc + self[(i, i)])
    }

    /// Squared Hilbert-Schmidt (Frobenius) norm.
    pub fn norm_sqr(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max)
    }

    /// Deviation of `self` from the identity, max-abs.
    pub fn identity_residual(&self) -> T {
        self.max_abs_diff(&Self::identity(self.rows))
    }

    /// `max |U^H U - I|`.
    pub fn unitarity_residual(&self) -> T {
        (&self.adjoint() * self).identity_residual()
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| *z * s).collect() }
    }

    pub fn map<U: Real>(&self, f: impl Fn(C<T>) -> C<U>) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().copied().map(f).collect() }
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            self[(i / other.rows, j / other.cols)] * other[(i % other.rows, j % other.cols)]
        })
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = C<T>;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Mul for &Mat<T> {
    type Output = Mat<T>;

    fn mul(self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)] + a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

/// In-place modified Gram-Schmidt on a list of vectors with respect to the
/// plain Euclidean inner product. Vectors whose residual norm falls below
/// `drop_tol` are discarded. Returns the surviving orthonormal vectors.
pub fn gram_schmidt<T: Real>(vectors: Vec<Vec<C<T>>>, drop_tol: T) -> Vec<Vec<C<T>>> {
    let mut basis: Vec<Vec<C<T>>> = Vec::with_capacity(vectors.len());
    for mut v in vectors {
        // two passes keep the basis orthogonal to working precision
        for _ in 0..2 {
            for b in &basis {
                let proj: C<T> = b.iter().zip(&v).fold(cz(), |acc, (bi, vi)| acc + bi.conj() * *vi);
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = *vi - proj * *bi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if norm > drop_tol {
            let inv = T::one() / norm;
            basis.push(v.into_iter().map(|z| z * inv).collect());
        }
    }
    basis
}
