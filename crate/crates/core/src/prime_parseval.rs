//! Prime-Parseval membership, the matrix-sequence space `L^2(A)` with its
//! Hilbert-Schmidt inner product, and the coefficient map onto it.

use num_complex::Complex;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{coefficients, parseval_defect, project, L2Function, OrthonormalFamily};
use crate::linalg::Mat;
use crate::scalar::{cz, C, Real};

/// `alpha -> phi(alpha)`, one square matrix per block.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixSequence<T> {
    pub blocks: Vec<(String, Mat<T>)>,
}

impl<T: Real> MatrixSequence<T> {
    pub fn new(blocks: Vec<(String, Mat<T>)>) -> Result<Self> {
        if let Some((l, m)) = blocks.iter().find(|(_, m)| !m.is_square()) {
            return Err(Error::ShapeMismatch(format!("block `{l}` is {}x{}", m.rows(), m.cols())));
        }
        Ok(Self { blocks })
    }

    /// The zero sequence shaped like `family`.
    pub fn zeros(family: &OrthonormalFamily<T>) -> Self {
        Self { blocks: family.blocks().iter().map(|b| (b.label.clone(), Mat::zeros(b.size, b.size))).collect() }
    }

    /// Standard complex normal entries shaped like `family`.
    pub fn random(family: &OrthonormalFamily<T>, rng: &mut impl Rng) -> Self {
        let mut normal = || {
            let x: f64 = rng.sample(rand_distr::StandardNormal);
            T::of(x)
        };
        let blocks = family
            .blocks()
            .iter()
            .map(|b| (b.label.clone(), Mat::from_fn(b.size, b.size, |_, _| Complex::new(normal(), normal()))))
            .collect();
        Self { blocks }
    }

    /// `sum_alpha sum_ij |phi(alpha)_ij|^2`.
    pub fn norm_sqr(&self) -> T {
        self.blocks.iter().map(|(_, m)| m.norm_sqr()).sum()
    }

    fn check_structure(&self, other: &Self) -> Result<()> {
        let same = self.blocks.len() == other.blocks.len()
            && self
                .blocks
                .iter()
                .zip(&other.blocks)
                .all(|((la, a), (lb, b))| la == lb && a.rows() == b.rows());
        if same {
            Ok(())
        } else {
            Err(Error::ShapeMismatch("matrix sequences have different block structure".into()))
        }
    }

    fn check_family(&self, family: &OrthonormalFamily<T>) -> Result<()> {
        let same = self.blocks.len() == family.blocks().len()
            && self.blocks.iter().zip(family.blocks()).all(|((l, m), b)| *l == b.label && m.rows() == b.size);
        if same {
            Ok(())
        } else {
            Err(Error::ShapeMismatch("matrix sequence does not match the family's blocks".into()))
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.check_structure(other)?;
        Ok(self.blocks.iter().zip(&other.blocks).map(|((_, a), (_, b))| a.max_abs_diff(b)).fold(T::zero(), T::max))
    }

    pub fn add_scaled(&self, s: C<T>, other: &Self) -> Result<Self> {
        self.check_structure(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|((l, a), (_, b))| {
                let m = Mat::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)] + s * b[(i, j)]);
                (l.clone(), m)
            })
            .collect();
        Ok(Self { blocks })
    }
}

/// `(phi, psi) = sum_alpha tr(phi(alpha) psi(alpha)^H)`.
pub fn hs_inner<T: Real>(phi: &MatrixSequence<T>, psi: &MatrixSequence<T>) -> Result<C<T>> {
    phi.check_structure(psi)?;
    Ok(phi
        .blocks
        .iter()
        .zip(&psi.blocks)
        .map(|((_, a), (_, b))| a.as_slice().iter().zip(b.as_slice()).fold(cz(), |acc, (x, y)| acc + *x * y.conj()))
        .fold(cz(), |acc, z| acc + z))
}

/// `fhat(alpha)_ij = <f, chi_{alpha_i^j}>`.
pub fn transform_h<T: Real>(f: &L2Function<T>, family: &OrthonormalFamily<T>) -> Result<MatrixSequence<T>> {
    let c = coefficients(f, family)?;
    let blocks = family
        .blocks()
        .iter()
        .map(|b| (b.label.clone(), Mat::from_fn(b.size, b.size, |i, j| c[b.member(i, j)])))
        .collect();
    Ok(MatrixSequence { blocks })
}

/// `sum_alpha sum_ij phi(alpha)_ij chi_{alpha_i^j}`.
pub fn inverse_h<T: Real>(phi: &MatrixSequence<T>, family: &OrthonormalFamily<T>) -> Result<L2Function<T>> {
    phi.check_family(family)?;
    let mut values = vec![cz(); family.group().len()];
    for ((_, m), b) in phi.blocks.iter().zip(family.blocks()) {
        for i in 0..b.size {
            for j in 0..b.size {
                let c = m[(i, j)];
                for (v, x) in values.iter_mut().zip(family.member_values(b.member(i, j))) {
                    *v = *v + c * *x;
                }
            }
        }
    }
    L2Function::new(family.group().clone(), values)
}

/// `| ||f||^2 - ||transform_h(f)||^2 |`.
pub fn isometry_defect<T: Real>(f: &L2Function<T>, family: &OrthonormalFamily<T>) -> Result<T> {
    Ok((f.norm_sqr() - transform_h(f, family)?.norm_sqr()).abs())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Member,
    NonMember,
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipVerdict {
    pub defect: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub span_dimension: usize,
    pub norm_sq: f64,
}

impl MembershipVerdict {
    pub fn is_member(&self) -> bool {
        self.verdict == Verdict::Member
    }
}

/// Default membership tolerance for a family's group.
pub fn default_membership_tol<T: Real>(family: &OrthonormalFamily<T>) -> f64 {
    if family.group().is_finite() {
        1e-10
    } else {
        1e-8
    }
}

/// Member of the prime-Parseval subspace iff the Parseval defect is at most `tol`.
pub fn membership<T: Real>(f: &L2Function<T>, family: &OrthonormalFamily<T>, tol: f64) -> Result<MembershipVerdict> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidTolerance(tol));
    }
    let defect = parseval_defect(f, family)?.to_f64_lossy();
    Ok(MembershipVerdict {
        defect,
        tolerance: tol,
        verdict: if defect <= tol { Verdict::Member } else { Verdict::NonMember },
        span_dimension: family.len(),
        norm_sq: f.norm_sqr().to_f64_lossy(),
    })
}

/// `||f - P_F f||^2`, the round-trip defect of the Fourier-subspace test.
pub fn fourier_subspace_defect<T: Real>(f: &L2Function<T>, family: &OrthonormalFamily<T>) -> Result<T> {
    let p = project(f, family)?;
    Ok((f - &p)?.norm_sqr())
}

/// A component of `block_decompose`: the projection onto `H_i^alpha`.
#[derive(Clone, Debug)]
pub struct BlockComponent<T> {
    pub block: String,
    pub row: usize,
    pub component: L2Function<T>,
}

/// Projections of `f` onto each `H_i^alpha = span{chi_{alpha_i^j} : j}`.
pub fn block_decompose<T: Real>(f: &L2Function<T>, family: &OrthonormalFamily<T>) -> Result<Vec<BlockComponent<T>>> {
    let c = coefficients(f, family)?;
    let n = family.group().len();
    let mut out = Vec::new();
    for b in family.blocks() {
        for i in 0..b.size {
            let mut values = vec![cz(); n];
            for j in 0..b.size {
                let idx = b.member(i, j);
                for (v, x) in values.iter_mut().zip(family.member_values(idx)) {
                    *v = *v + c[idx] * *x;
                }
            }
            out.push(BlockComponent { block: b.label.clone(), row: i, component: L2Function::new(family.group().clone(), values)? });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{RepCatalog, Truncation};
    use crate::groups::make_group;
    use crate::semicomplete::{build_riemann_lebesgue_family, OmissionSpec};
    use std::sync::Arc;

    fn sym3() -> RepCatalog<f64> {
        RepCatalog::build(Arc::new(make_group("sym:3").unwrap()), Truncation::Full).unwrap()
    }

    #[test]
    fn membership_examples() {
        let cat = sym3();
        let pw = cat.peter_weyl_basis().unwrap();
        let rl = build_riemann_lebesgue_family(&cat, &OmissionSpec::new([cat.label(2)])).unwrap();
        let member = rl.member(1).unwrap();
        let v = membership(&member, &rl, 1e-10).unwrap();
        assert!(v.is_member() && v.defect <= 1e-12);
        let omitted = pw.block_member("2", 1, 0).unwrap();
        let v = membership(&omitted, &rl, 1e-10).unwrap();
        assert!(!v.is_member());
        assert!((v.defect - 1.0).abs() < 1e-12);
        assert_eq!(v.span_dimension, 2);
        let zero = L2Function::zero(cat.group().clone());
        let v = membership(&zero, &rl, 1e-10).unwrap();
        assert!(v.is_member() && v.defect == 0.0);
        assert!(matches!(membership(&zero, &rl, 0.0), Err(Error::InvalidTolerance(_))));
    }

    #[test]
    fn transform_of_member_is_unit_entry() {
        let cat = sym3();
        let pw = cat.peter_weyl_basis().unwrap();
        let f = pw.block_member("2", 0, 1).unwrap();
        let phi = transform_h(&f, &pw).unwrap();
        for (l, m) in &phi.blocks {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let expect = if l == "2" && i == 0 && j == 1 { 1.0 } else { 0.0 };
                    assert!((m[(i, j)] - expect).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn hs_inner_examples() {
        let cat = sym3();
        let pw = cat.peter_weyl_basis().unwrap();
        let mut a = MatrixSequence::zeros(&pw);
        let mut b = MatrixSequence::zeros(&pw);
        a.blocks[2].1[(0, 0)] = Complex::new(1.0, 0.0);
        assert_eq!(hs_inner(&a, &a).unwrap(), Complex::new(1.0, 0.0));
        b.blocks[0].1[(0, 0)] = Complex::new(1.0, 0.0);
        assert_eq!(hs_inner(&a, &b).unwrap(), Complex::new(0.0, 0.0));
        let rl = build_riemann_lebesgue_family(&cat, &OmissionSpec::new([cat.label(2)])).unwrap();
        assert!(hs_inner(&a, &MatrixSequence::zeros(&rl)).is_err());
        assert!(inverse_h(&a, &rl).is_err());
    }

    #[test]
    fn inverse_of_zero_and_unit() {
        let cat = sym3();
        let pw = cat.peter_weyl_basis().unwrap();
        let z = inverse_h(&MatrixSequence::zeros(&pw), &pw).unwrap();
        assert_eq!(z.norm_sqr(), 0.0);
        let mut e = MatrixSequence::zeros(&pw);
        e.blocks[1].1[(0, 0)] = Complex::new(1.0, 0.0);
        let f = inverse_h(&e, &pw).unwrap();
        assert_eq!(f.values(), pw.member_values(1));
    }

    #[test]
    fn non_square_blocks_rejected() {
        assert!(MatrixSequence::<f64>::new(vec![("a".into(), Mat::zeros(1, 2))]).is_err());
    }
}
