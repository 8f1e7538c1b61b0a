//! The function space `L^2(G)` on a quadrature grid, orthonormal families,
//! expansion coefficients and Bessel/Parseval defects.

use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::groups::GroupModel;
use crate::linalg::Mat;
use crate::scalar::{cz, C, Real};

/// A function on the group, stored by its values at the quadrature nodes.
#[derive(Clone, Debug)]
pub struct L2Function<T> {
    group: Arc<GroupModel<T>>,
    values: Vec<C<T>>,
}

impl<T: Real> L2Function<T> {
    pub fn new(group: Arc<GroupModel<T>>, values: Vec<C<T>>) -> Result<Self> {
        if values.len() != group.len() {
            return Err(Error::LengthMismatch { expected: group.len(), found: values.len() });
        }
        Ok(Self { group, values })
    }

    pub fn zero(group: Arc<GroupModel<T>>) -> Self {
        let n = group.len();
        Self { group, values: vec![cz(); n] }
    }

    pub fn constant(group: Arc<GroupModel<T>>, c: C<T>) -> Self {
        let n = group.len();
        Self { group, values: vec![c; n] }
    }

    /// Unit vector `e_k` of the node basis scaled so that `||f|| = 1`.
    pub fn node_indicator(group: Arc<GroupModel<T>>, k: usize) -> Result<Self> {
        if k >= group.len() {
            return Err(Error::IndexOutOfRange(format!("node {k} of {}", group.len())));
        }
        let mut values = vec![cz(); group.len()];
        values[k] = Complex::new(T::one() / group.weights()[k].sqrt(), T::zero());
        Ok(Self { group, values })
    }

    pub fn from_fn(group: Arc<GroupModel<T>>, f: impl Fn(usize) -> C<T>) -> Self {
        let values = (0..group.len()).map(f).collect();
        Self { group, values }
    }

    /// Complex standard-normal node values from a seeded generator,
    /// normalized to unit `L^2` norm.
    pub fn random(group: Arc<GroupModel<T>>, rng: &mut ChaCha8Rng) -> Self {
        let values: Vec<C<T>> = (0..group.len())
            .map(|_| {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                Complex::new(T::of(re), T::of(im))
            })
            .collect();
        let mut f = Self { group, values };
        let n = f.norm();
        if n > T::zero() {
            f = f.scale(Complex::new(T::one() / n, T::zero()));
        }
        f
    }

    pub fn random_seeded(group: Arc<GroupModel<T>>, seed: u64) -> Self {
        Self::random(group, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn group(&self) -> &Arc<GroupModel<T>> {
        &self.group
    }

    pub fn values(&self) -> &[C<T>] {
        &self.values
    }

    pub fn into_values(self) -> Vec<C<T>> {
        self.values
    }

    pub fn norm_sqr(&self) -> T {
        self.values.iter().zip(self.group.weights()).map(|(v, w)| v.norm_sqr() * *w).sum()
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self { group: self.group.clone(), values: self.values.iter().map(|v| *v * s).collect() }
    }

    pub fn conj(&self) -> Self {
        Self { group: self.group.clone(), values: self.values.iter().map(|v| v.conj()).collect() }
    }

    /// `||self - other||_2`.
    pub fn distance(&self, other: &Self) -> Result<T> {
        Ok((self - other)?.norm())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C<T>, C<T>) -> C<T>) -> Result<Self> {
        self.group.check_same(&other.group)?;
        Ok(Self {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(*a, *b)).collect(),
        })
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: C<T>, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + s * b)
    }
}

impl<T: Real> Add for &L2Function<T> {
    type Output = Result<L2Function<T>>;
    fn add(self, rhs: Self) -> Self::Output {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<T: Real> Sub for &L2Function<T> {
    type Output = Result<L2Function<T>>;
    fn sub(self, rhs: Self) -> Self::Output {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<T: Real> Mul<C<T>> for &L2Function<T> {
    type Output = L2Function<T>;
    fn mul(self, rhs: C<T>) -> L2Function<T> {
        self.scale(rhs)
    }
}

/// `<f, h> = sum_k w_k f(g_k) conj(h(g_k))`, linear in the first argument.
pub fn inner<T: Real>(f: &L2Function<T>, h: &L2Function<T>) -> Result<C<T>> {
    f.group.check_same(&h.group)?;
    Ok(weighted_dot(f.group.weights(), &f.values, &h.values))
}

#[inline]
pub(crate) fn weighted_dot<T: Real>(w: &[T], a: &[C<T>], b: &[C<T>]) -> C<T> {
    a.iter().zip(b).zip(w).fold(cz(), |acc, ((x, y), w)| acc + *x * y.conj() * *w)
}

/// Layout of one block of a family: `size x size` members starting at `offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyBlock {
    pub label: String,
    pub size: usize,
    pub offset: usize,
}

impl FamilyBlock {
    /// Flat index of member `(i, j)`, row-major within the block.
    pub fn member(&self, i: usize, j: usize) -> usize {
        self.offset + i * self.size + j
    }
}

/// An orthonormal family `{chi_{alpha_i^j}}` grouped into square blocks.
/// Flat order: blocks in sequence, row-major (`i` outer, `j` inner) inside.
#[derive(Clone, Debug)]
pub struct OrthonormalFamily<T> {
    group: Arc<GroupModel<T>>,
    blocks: Vec<FamilyBlock>,
    members: Vec<Vec<C<T>>>,
}

impl<T: Real> OrthonormalFamily<T> {
    /// Builds a family and checks its Gram matrix against the group's
    /// default tolerance.
    pub fn new(group: Arc<GroupModel<T>>, blocks: Vec<(String, usize)>, members: Vec<Vec<C<T>>>) -> Result<Self> {
        let tol = group.gram_tol();
        Self::with_tolerance(group, blocks, members, tol)
    }

    pub fn with_tolerance(
        group: Arc<GroupModel<T>>,
        blocks: Vec<(String, usize)>,
        members: Vec<Vec<C<T>>>,
        tol: f64,
    ) -> Result<Self> {
        let fam = Self::unchecked(group, blocks, members)?;
        let residual = fam.gram_residual().to_f64_lossy();
        if residual.is_nan() || residual > tol {
            return Err(Error::NotOrthonormal { residual, tol });
        }
        Ok(fam)
    }

    /// Builds the block layout without the Gram check.
    pub fn unchecked(group: Arc<GroupModel<T>>, blocks: Vec<(String, usize)>, members: Vec<Vec<C<T>>>) -> Result<Self> {
        let mut offset = 0;
        let mut layout = Vec::with_capacity(blocks.len());
        for (label, size) in blocks {
            if size == 0 {
                return Err(Error::ShapeMismatch(format!("block `{label}` has size 0")));
            }
            layout.push(FamilyBlock { label, size, offset });
            offset += size * size;
        }
        if offset != members.len() {
            return Err(Error::LengthMismatch { expected: offset, found: members.len() });
        }
        if let Some(bad) = members.iter().find(|m| m.len() != group.len()) {
            return Err(Error::LengthMismatch { expected: group.len(), found: bad.len() });
        }
        Ok(Self { group, blocks: layout, members })
    }

    /// The family with no members.
    pub fn empty(group: Arc<GroupModel<T>>) -> Self {
        Self { group, blocks: Vec::new(), members: Vec::new() }
    }

    pub fn group(&self) -> &Arc<GroupModel<T>> {
        &self.group
    }

    pub fn blocks(&self) -> &[FamilyBlock] {
        &self.blocks
    }

    pub fn block(&self, label: &str) -> Result<&FamilyBlock> {
        self.blocks.iter().find(|b| b.label == label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn max_block_size(&self) -> usize {
        self.blocks.iter().map(|b| b.size).max().unwrap_or(0)
    }

    pub fn member_values(&self, index: usize) -> &[C<T>] {
        &self.members[index]
    }

    pub fn member(&self, index: usize) -> Result<L2Function<T>> {
        let v = self.members.get(index).ok_or_else(|| Error::IndexOutOfRange(format!("member {index}")))?;
        Ok(L2Function { group: self.group.clone(), values: v.clone() })
    }

    /// Member `(i, j)` of the block with the given label.
    pub fn block_member(&self, label: &str, i: usize, j: usize) -> Result<L2Function<T>> {
        let b = self.block(label)?;
        if i >= b.size || j >= b.size {
            return Err(Error::IndexOutOfRange(format!("({i}, {j}) in block `{label}` of size {}", b.size)));
        }
        self.member(b.member(i, j))
    }

    pub fn gram(&self) -> Mat<T> {
        let w = self.group.weights();
        let m = self.members.len();
        let mut g = Mat::zeros(m, m);
        for a in 0..m {
            for b in a..m {
                let v = weighted_dot(w, &self.members[a], &self.members[b]);
                g[(a, b)] = v;
                g[(b, a)] = v.conj();
            }
        }
        g
    }

    /// `max |Gram - I|`.
    pub fn gram_residual(&self) -> T {
        self.gram().identity_residual()
    }
}

/// `<f, chi>` for every member, in flat order.
pub fn coefficients<T: Real>(f: &L2Function<T>, family: &OrthonormalFamily<T>) -> Result<Vec<C<T>>> {
    f.group.check_same(&family.group)?;
    let w = f.group.weights();
    Ok(family.members.iter().map(|m| weighted_dot(w, &f.values, m)).collect())
}

/// `sum_a coeffs[a] chi_a`.
pub fn expand<T: Real>(coeffs: &[C<T>], family: &OrthonormalFamily<T>) -> Result<L2Function<T>> {
    if coeffs.len() != family.len() {
        return Err(Error::LengthMismatch { expected: family.len(), found: coeffs.len() });
    }
    let mut values = vec![cz(); family.group.len()];
    for (c, m) in coeffs.iter().zip(&family.members) {
        for (v, x) in values.iter_mut().zip(m) {
            *v = *v + *c * *x;
        }
    }
    Ok(L2Function { group: family.group.clone(), values })
}

/// Orthogonal projection of `f` onto the span of the family.
pub fn project<T: Real>(f: &L2Function<T>, family: &OrthonormalFamily<T>) -> Result<L2Function<T>> {
    expand(&coefficients(f, family)?, family)
}

/// `||f||^2 - sum |<f, chi>|^2`. Nonnegative up to rounding (Bessel); zero
/// exactly when `f` lies in the span.
pub fn parseval_defect<T: Real>(f: &L2Function<T>, family: &OrthonormalFamily<T>) -> Result<T> {
    let c = coefficients(f, family)?;
    Ok(f.norm_sqr() - c.iter().map(|z| z.norm_sqr()).sum::<T>())
}

/// Non-zero scalars `gamma_1..gamma_n`, `beta_11..beta_nn` weighting a
/// semi-Fourier expansion; member `(i, j)` of each block is weighted by
/// `gamma_j * beta_ij`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionWeights<T> {
    n: usize,
    gamma: Vec<C<T>>,
    beta: Mat<T>,
}

impl<T: Real> ExpansionWeights<T> {
    /// Shapes are checked here; zero entries are reported by
    /// `validate_weights` and rejected at expansion time.
    pub fn new(gamma: Vec<C<T>>, beta: Mat<T>) -> Result<Self> {
        let n = gamma.len();
        if n == 0 {
            return Err(Error::ShapeMismatch("weights need n >= 1".into()));
        }
        if beta.rows() != n || beta.cols() != n {
            return Err(Error::ShapeMismatch(format!("beta is {}x{}, gamma has length {n}", beta.rows(), beta.cols())));
        }
        Ok(Self { n, gamma, beta })
    }

    /// All ones.
    pub fn unit(n: usize) -> Result<Self> {
        let one = Complex::new(T::one(), T::zero());
        Self::new(vec![one; n], Mat::from_fn(n, n, |_, _| one))
    }

    /// Random admissible weights: `gamma_i` with modulus in `[1/2, 2)` and
    /// random phase, `beta_ii = 1 / gamma_i`, off-diagonal `beta` drawn the
    /// same way as `gamma`.
    pub fn reciprocal(n: usize, rng: &mut impl Rng) -> Result<Self> {
        let mut draw = || {
            let r: f64 = rng.random_range(0.5..2.0);
            let t: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            Complex::from_polar(r, t)
        };
        let gamma: Vec<Complex<f64>> = (0..n).map(|_| draw()).collect();
        let mut beta = Mat::<f64>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                beta[(i, j)] = if i == j { gamma[i].inv() } else { draw() };
            }
        }
        let cast = |z: Complex<f64>| Complex::new(T::of(z.re), T::of(z.im));
        Self::new(gamma.into_iter().map(cast).collect(), beta.map(cast))
    }

    pub fn reciprocal_seeded(n: usize, seed: u64) -> Result<Self> {
        Self::reciprocal(n, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma(&self) -> &[C<T>] {
        &self.gamma
    }

    pub fn beta(&self) -> &Mat<T> {
        &self.beta
    }

    /// Weight applied to member `(i, j)`.
    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> C<T> {
        self.gamma[j] * self.beta[(i, j)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{RepCatalog, Truncation};
    use crate::semicomplete::validate_weights;
    use crate::groups::make_group;

    fn group(s: &str) -> Arc<GroupModel<f64>> {
        Arc::new(make_group(s).unwrap())
    }

    #[test]
    fn inner_examples() {
        let g = group("circle:8");
        let one = L2Function::constant(g.clone(), Complex::new(1.0, 0.0));
        assert!((inner(&one, &one).unwrap() - 1.0).norm() < 1e-15);
        let e1 = L2Function::from_fn(g.clone(), |k| Complex::from_polar(1.0, std::f64::consts::TAU * k as f64 / 8.0));
        let e2 = L2Function::from_fn(g.clone(), |k| Complex::from_polar(1.0, 2.0 * std::f64::consts::TAU * k as f64 / 8.0));
        assert!(inner(&e1, &e2).unwrap().norm() < 1e-15);
    }

    #[test]
    fn inner_is_conjugate_symmetric_and_linear() {
        let g = group("sym:3");
        let f = L2Function::random_seeded(g.clone(), 1);
        let h = L2Function::random_seeded(g.clone(), 2);
        let a = Complex::new(0.3, -1.2);
        assert!((inner(&f, &h).unwrap() - inner(&h, &f).unwrap().conj()).norm() < 1e-15);
        let lhs = inner(&f.scale(a), &h).unwrap();
        assert!((lhs - a * inner(&f, &h).unwrap()).norm() < 1e-14);
    }

    #[test]
    fn group_mismatch_detected() {
        let f = L2Function::<f64>::zero(group("zn:6"));
        let h = L2Function::<f64>::zero(group("sym:3"));
        assert!(matches!(inner(&f, &h), Err(Error::GroupMismatch { .. })));
    }

    #[test]
    fn coefficient_and_expand_examples() {
        let g = group("sym:3");
        let cat = RepCatalog::build(g.clone(), Truncation::Full).unwrap();
        let fam = cat.peter_weyl_basis().unwrap();
        let first = fam.member(0).unwrap();
        let c = coefficients(&first, &fam).unwrap();
        for (k, z) in c.iter().enumerate() {
            let target = if k == 0 { 1.0 } else { 0.0 };
            assert!((z - target).norm() < 1e-12);
        }
        let zero = L2Function::zero(g.clone());
        assert!(coefficients(&zero, &fam).unwrap().iter().all(|z| z.norm() == 0.0));
        let mut e1 = vec![Complex::new(0.0, 0.0); fam.len()];
        e1[0] = Complex::new(1.0, 0.0);
        let back = expand(&e1, &fam).unwrap();
        assert_eq!(back.values(), first.values());
        assert!(expand(&e1[1..], &fam).is_err());
    }

    #[test]
    fn empty_family_defect_is_norm() {
        let g = group("zn:5");
        let fam = OrthonormalFamily::empty(g.clone());
        let f = L2Function::random_seeded(g.clone(), 9);
        assert!((parseval_defect(&f, &fam).unwrap() - f.norm_sqr()).abs() < 1e-15);
        // only the zero vector passes the defect-zero test among basis vectors
        for k in 0..5 {
            let e = L2Function::node_indicator(g.clone(), k).unwrap();
            assert!(parseval_defect(&e, &fam).unwrap() > 0.5);
        }
        assert_eq!(parseval_defect(&L2Function::zero(g), &fam).unwrap(), 0.0);
    }

    #[test]
    fn non_orthonormal_family_rejected() {
        let g = group("zn:3");
        let one = vec![Complex::new(1.0, 0.0); 3];
        let res = OrthonormalFamily::new(g, vec![("a".into(), 1), ("b".into(), 1)], vec![one.clone(), one]);
        assert!(matches!(res, Err(Error::NotOrthonormal { .. })));
    }

    #[test]
    fn weights_shape_checks() {
        assert!(ExpansionWeights::<f64>::new(vec![], Mat::zeros(0, 0)).is_err());
        assert!(ExpansionWeights::<f64>::new(vec![Complex::new(1.0, 0.0); 2], Mat::zeros(3, 3)).is_err());
        let w = ExpansionWeights::<f64>::unit(2).unwrap();
        assert_eq!(w.weight(1, 0), Complex::new(1.0, 0.0));
    }

    #[test]
    fn reciprocal_weights_are_admissible() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..5 {
            let w = ExpansionWeights::<f64>::reciprocal(n, &mut rng).unwrap();
            assert!(validate_weights(&w).is_admissible());
        }
    }
}
