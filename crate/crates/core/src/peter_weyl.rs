//! Fourier transform onto matrix coefficients, synthesis, and the row-space
//! decomposition `H_i^lambda = span_j u_ij^lambda`.

use num_complex::Complex;

use crate::catalog::{IrrepLabel, RepCatalog};
use crate::error::{Error, Result};
use crate::hilbert::{weighted_dot, L2Function};
use crate::linalg::Mat;
use crate::scalar::{cz, Real};

/// `lambda -> fhat(lambda)` with `fhat(lambda)_ij = <f, u_ij^lambda>`.
#[derive(Clone, Debug)]
pub struct FourierCoefficients<T> {
    pub blocks: Vec<(IrrepLabel, Mat<T>)>,
}

impl<T: Real> FourierCoefficients<T> {
    pub fn zeros(cat: &RepCatalog<T>) -> Self {
        Self { blocks: cat.labels().into_iter().map(|l| (l, Mat::zeros(l.degree, l.degree))).collect() }
    }

    pub fn get(&self, label: &IrrepLabel) -> Option<&Mat<T>> {
        self.blocks.iter().find(|(l, _)| l == label).map(|(_, m)| m)
    }

    /// `sum_lambda d(lambda) ||fhat(lambda)||_HS^2`.
    pub fn plancherel_sum(&self) -> T {
        self.blocks.iter().map(|(l, m)| T::of(l.degree as f64) * m.norm_sqr()).sum()
    }

    /// Per-block Hilbert-Schmidt norms.
    pub fn hs_norms(&self) -> Vec<(IrrepLabel, T)> {
        self.blocks.iter().map(|(l, m)| (*l, m.norm_sqr().sqrt())).collect()
    }
}

pub fn fourier_transform<T: Real>(f: &L2Function<T>, cat: &RepCatalog<T>) -> Result<FourierCoefficients<T>> {
    f.group().check_same(cat.group())?;
    let w = cat.group().weights();
    let mut blocks = Vec::with_capacity(cat.len());
    for label in cat.labels() {
        let d = label.degree;
        let mut m = Mat::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = weighted_dot(w, f.values(), cat.coefficient_grid(&label, i, j)?);
            }
        }
        blocks.push((label, m));
    }
    Ok(FourierCoefficients { blocks })
}

/// `sum_lambda d(lambda) sum_ij fhat(lambda)_ij u_ij^lambda`.
pub fn synthesize<T: Real>(fhat: &FourierCoefficients<T>, cat: &RepCatalog<T>) -> Result<L2Function<T>> {
    if fhat.blocks.len() != cat.len() {
        return Err(Error::ShapeMismatch(format!("{} blocks for a catalog of {}", fhat.blocks.len(), cat.len())));
    }
    let n = cat.group().len();
    let mut values = vec![cz(); n];
    for ((label, m), expected) in fhat.blocks.iter().zip(cat.labels()) {
        if *label != expected || m.rows() != label.degree || m.cols() != label.degree {
            return Err(Error::ShapeMismatch(format!("block {label} does not match catalog label {expected}")));
        }
        let d = T::of(label.degree as f64);
        for i in 0..label.degree {
            for j in 0..label.degree {
                let c = m[(i, j)] * d;
                for (v, u) in values.iter_mut().zip(cat.coefficient_grid(label, i, j)?) {
                    *v = *v + c * *u;
                }
            }
        }
    }
    L2Function::new(cat.group().clone(), values)
}

/// Orthogonal projection of `f` onto `H_i^lambda = span{u_ij^lambda : j}`.
pub fn block_project<T: Real>(f: &L2Function<T>, cat: &RepCatalog<T>, label: &IrrepLabel, i: usize) -> Result<L2Function<T>> {
    f.group().check_same(cat.group())?;
    cat.index_of(label)?;
    if i >= label.degree {
        return Err(Error::IndexOutOfRange(format!("row {i} of label {label} with degree {}", label.degree)));
    }
    let w = cat.group().weights();
    let d = T::of(label.degree as f64);
    let mut values = vec![cz(); cat.group().len()];
    for j in 0..label.degree {
        let u = cat.coefficient_grid(label, i, j)?;
        let c = weighted_dot(w, f.values(), u) * d;
        for (v, x) in values.iter_mut().zip(u) {
            *v = *v + c * *x;
        }
    }
    L2Function::new(cat.group().clone(), values)
}

/// `u_ij^lambda` as a function on the grid.
pub fn coefficient_function<T: Real>(cat: &RepCatalog<T>, label: &IrrepLabel, i: usize, j: usize) -> Result<L2Function<T>> {
    L2Function::new(cat.group().clone(), cat.coefficient_grid(label, i, j)?.to_vec())
}

/// Scales every block of `fhat` by `s`; handy for linearity checks.
pub fn scale_coefficients<T: Real>(fhat: &FourierCoefficients<T>, s: Complex<T>) -> FourierCoefficients<T> {
    FourierCoefficients { blocks: fhat.blocks.iter().map(|(l, m)| (*l, m.scale(s))).collect() }
}
