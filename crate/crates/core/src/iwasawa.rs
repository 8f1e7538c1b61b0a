//! A desk-scale `G = K A N` model: `K` is a compact group model, `A` and `N`
//! are truncated intervals with Gauss-Legendre (Lebesgue) weights, and a
//! profile `f : AN -> C` lifts families on `K` via
//! `chi(k a n) = e^{f(a n)} xi(k)`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::catalog::RepCatalog;
use crate::error::{Error, Result};
use crate::functions::TestSet;
use crate::groups::GroupModel;
use crate::hilbert::{ExpansionWeights, L2Function, OrthonormalFamily};
use crate::linalg::Mat;
use crate::quadrature::gauss_legendre_on;
use crate::scalar::{cz, C, Real};
use crate::semicomplete::{semicompleteness_defect, SemicompletenessReport};

/// Truncated coordinate axis for the `A` or `N` factor.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisSpec {
    pub range: [f64; 2],
    pub nodes: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProfileSpec {
    /// `f = 0` before normalization.
    Uniform,
    /// `e^{2 f} = exp(-(a^2 + n^2) / (2 sigma^2))` before normalization.
    Gauss { sigma: f64 },
    /// Values on the `A x N` grid in `(a_index, n_index)` row-major order,
    /// including any inserted identity node.
    Table(Vec<Complex<f64>>),
}

impl fmt::Display for ProfileSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileSpec::Uniform => f.write_str("uniform"),
            ProfileSpec::Gauss { sigma } => write!(f, "gauss:sigma={sigma}"),
            ProfileSpec::Table(v) => write!(f, "table[{}]", v.len()),
        }
    }
}

impl FromStr for ProfileSpec {
    type Err = Error;

    /// Parses `uniform` and `gauss:sigma=S`; tables are loaded by the caller.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "uniform" {
            return Ok(Self::Uniform);
        }
        if let Some(rest) = s.strip_prefix("gauss") {
            let rest = rest.trim_start_matches(':');
            let sigma = match rest.split_once('=') {
                Some(("sigma", v)) => v.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad sigma in `{s}`")))?,
                None if rest.is_empty() => 1.0,
                _ => return Err(Error::Parse(format!("bad profile `{s}`"))),
            };
            if sigma <= 0.0 || !sigma.is_finite() {
                return Err(Error::Parse(format!("sigma must be positive in `{s}`")));
            }
            return Ok(Self::Gauss { sigma });
        }
        Err(Error::Parse(format!("unknown profile `{s}`")))
    }
}

/// One axis grid: ascending nodes, Lebesgue weights, and the position of 0.
#[derive(Clone, Debug)]
pub struct AxisGrid<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
    pub identity: usize,
}

impl<T: Real> AxisGrid<T> {
    /// Gauss-Legendre nodes on the range; 0 is inserted with zero weight
    /// when it is not already a node.
    pub fn new(spec: &AxisSpec, name: &str) -> Result<Self> {
        let [lo, hi] = spec.range;
        if spec.nodes == 0 {
            return Err(Error::DegenerateRange(format!("{name} axis needs at least one node")));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::DegenerateRange(format!("{name} range [{lo}, {hi}] is empty or not finite")));
        }
        if !(lo <= 0.0 && 0.0 <= hi) {
            return Err(Error::DegenerateRange(format!(
                "{name} range [{lo}, {hi}] does not contain the identity coordinate 0"
            )));
        }
        let (mut nodes, mut weights) = gauss_legendre_on::<f64>(spec.nodes, lo, hi)?;
        // exact zero for the symmetric middle node
        for x in nodes.iter_mut() {
            if x.abs() < 1e-15 * (hi - lo) {
                *x = 0.0;
            }
        }
        let identity = match nodes.iter().position(|x| *x == 0.0) {
            Some(i) => i,
            None => {
                let at = nodes.partition_point(|x| *x < 0.0);
                nodes.insert(at, 0.0);
                weights.insert(at, 0.0);
                at
            }
        };
        Ok(Self {
            nodes: nodes.into_iter().map(T::of).collect(),
            weights: weights.into_iter().map(T::of).collect(),
            identity,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// `K` together with the truncated `AN` grid and a normalized profile.
#[derive(Clone, Debug)]
pub struct IwasawaModel<T> {
    k: Arc<GroupModel<T>>,
    a: AxisGrid<T>,
    n: AxisGrid<T>,
    profile_spec: ProfileSpec,
    /// `f` on the `AN` grid, index `ia * n.len() + in`.
    profile: Vec<C<T>>,
    /// Factor applied to `Re f` by the normalization.
    scale: T,
}

impl<T: Real> IwasawaModel<T> {
    pub fn new(k: Arc<GroupModel<T>>, a: &AxisSpec, n: &AxisSpec, profile: ProfileSpec) -> Result<Self> {
        let a_grid = AxisGrid::<T>::new(a, "A")?;
        let n_grid = AxisGrid::<T>::new(n, "N")?;
        let an_len = a_grid.len() * n_grid.len();
        let id = a_grid.identity * n_grid.len() + n_grid.identity;
        let raw: Vec<Complex<f64>> = match &profile {
            ProfileSpec::Uniform => vec![Complex::new(0.0, 0.0); an_len],
            ProfileSpec::Gauss { sigma } => {
                let s2 = 4.0 * sigma * sigma;
                let mut v = Vec::with_capacity(an_len);
                for x in &a_grid.nodes {
                    for y in &n_grid.nodes {
                        let (x, y) = (x.to_f64_lossy(), y.to_f64_lossy());
                        v.push(Complex::new(-(x * x + y * y) / s2, 0.0));
                    }
                }
                v
            }
            ProfileSpec::Table(values) => {
                if values.len() != an_len {
                    return Err(Error::LengthMismatch { expected: an_len, found: values.len() });
                }
                values.clone()
            }
        };
        // f(1) = 0 by an additive shift
        let shift = raw[id];
        let shape: Vec<Complex<f64>> = raw.iter().map(|z| *z - shift).collect();
        let weights: Vec<f64> = product_weights(&a_grid, &n_grid).into_iter().map(|w| w.to_f64_lossy()).collect();
        let scale = normalize_exponent(&shape, &weights)?;
        let values = shape
            .iter()
            .map(|z| Complex::new(T::of(z.re * scale), T::of(z.im)))
            .collect();
        Ok(Self { k, a: a_grid, n: n_grid, profile_spec: profile, profile: values, scale: T::of(scale) })
    }

    pub fn k(&self) -> &Arc<GroupModel<T>> {
        &self.k
    }

    pub fn a_axis(&self) -> &AxisGrid<T> {
        &self.a
    }

    pub fn n_axis(&self) -> &AxisGrid<T> {
        &self.n
    }

    pub fn profile_spec(&self) -> &ProfileSpec {
        &self.profile_spec
    }

    pub fn profile(&self) -> &[C<T>] {
        &self.profile
    }

    pub fn normalization_scale(&self) -> T {
        self.scale
    }

    pub fn an_len(&self) -> usize {
        self.a.len() * self.n.len()
    }

    /// Index of the `AN` identity in the flattened grid.
    pub fn identity_index(&self) -> usize {
        self.a.identity * self.n.len() + self.n.identity
    }

    /// `dadn` weights on the flattened grid.
    pub fn an_weights(&self) -> Vec<T> {
        product_weights(&self.a, &self.n)
    }

    /// `|f(1)|`.
    pub fn condition_i_residual(&self) -> T {
        self.profile[self.identity_index()].norm()
    }

    /// `|sum e^{2 Re f} dadn - 1|`.
    pub fn condition_ii_residual(&self) -> T {
        let two = T::of(2.0);
        let total: T = self.profile.iter().zip(self.an_weights()).map(|(f, w)| (two * f.re).exp() * w).sum();
        (total - T::one()).abs()
    }

    /// For `g(kan) = g0(k) e^{f(an)}`: `max_k |int_AN g(kan) e^{conj f(an) + f(a1 n1)} dadn - g0(k)|`
    /// at the anchor node `(a1, n1)`, computed by direct summation.
    pub fn condition_iii_residual(&self, g0: &L2Function<T>, anchor: usize) -> Result<T> {
        self.k.check_same(g0.group())?;
        if anchor >= self.an_len() {
            return Err(Error::IndexOutOfRange(format!("anchor {anchor} of {}", self.an_len())));
        }
        let w = self.an_weights();
        let f1 = self.profile[anchor];
        let mut worst = T::zero();
        for gk in g0.values() {
            let mut acc = cz::<T>();
            for (fp, wp) in self.profile.iter().zip(&w) {
                let g = *gk * fp.exp();
                acc = acc + g * (fp.conj() + f1).exp() * *wp;
            }
            worst = worst.max((acc - *gk).norm());
        }
        Ok(worst)
    }

    /// Largest condition (iii) residual over every anchor node. The sum
    /// factors for separable `g`, so each anchor costs `O(|K|)`.
    pub fn condition_iii_max_residual(&self, g0: &L2Function<T>) -> Result<T> {
        self.k.check_same(g0.group())?;
        let s = self.profile.iter().zip(self.an_weights()).fold(cz::<T>(), |acc, (fp, w)| acc + (*fp + fp.conj()).exp() * w);
        let gmax = g0.values().iter().map(|z| z.norm()).fold(T::zero(), T::max);
        let one = C::new(T::one(), T::zero());
        Ok(self.profile.iter().map(|f1| gmax * (s * f1.exp() - one).norm()).fold(T::zero(), T::max))
    }
}

fn product_weights<T: Real>(a: &AxisGrid<T>, n: &AxisGrid<T>) -> Vec<T> {
    a.weights.iter().flat_map(|wa| n.weights.iter().map(move |wn| *wa * *wn)).collect()
}

/// Finds `c > 0` with `sum_p w_p exp(2 c Re s_p) = 1`.
fn normalize_exponent(shape: &[Complex<f64>], weights: &[f64]) -> Result<f64> {
    let integral = |c: f64| -> f64 { shape.iter().zip(weights).map(|(s, w)| w * (2.0 * c * s.re).exp()).sum() };
    let h = |c: f64| integral(c) - 1.0;
    let flat = shape.iter().zip(weights).all(|(s, w)| *w == 0.0 || s.re == 0.0);
    if flat {
        let r = h(1.0);
        if r.abs() <= 1e-10 {
            return Ok(1.0);
        }
        return Err(Error::NotNormalizable(format!(
            "a constant profile with f(1) = 0 needs an AN box of measure 1, got {}",
            integral(1.0)
        )));
    }
    if h(1.0) == 0.0 {
        return Ok(1.0);
    }
    // bracket the root nearest c = 1 on a dyadic scan
    let mut best: Option<(f64, f64)> = None;
    for e in (0..=60i32).flat_map(|k| [-k, k + 1]) {
        let (c0, c1) = (2f64.powi(e - 1), 2f64.powi(e));
        if h(c0).signum() != h(c1).signum() {
            best = Some((c0, c1));
            break;
        }
    }
    let (mut lo, mut hi) = best.ok_or_else(|| {
        Error::NotNormalizable(format!(
            "exp(2 c Re f) never integrates to 1 (integral at c=1 is {})",
            integral(1.0)
        ))
    })?;
    let h_lo = h(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid).signum() == h_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let c = if h(lo).abs() <= h(hi).abs() { lo } else { hi };
    let r = h(c).abs();
    if r > 1e-12 {
        return Err(Error::NotNormalizable(format!("normalization residual {r:e}")));
    }
    Ok(c)
}

/// `chi_alpha(k a n) = e^{f(a n)} xi_alpha(k)` on the product grid `K x AN`.
#[derive(Clone, Debug)]
pub struct LiftedFamily<T> {
    model: Arc<IwasawaModel<T>>,
    source: OrthonormalFamily<T>,
    /// Per member, values at `k * an_len + p`.
    values: Vec<Vec<C<T>>>,
}

pub fn lift_family<T: Real>(model: &Arc<IwasawaModel<T>>, xi: &OrthonormalFamily<T>) -> Result<LiftedFamily<T>> {
    model.k.check_same(xi.group())?;
    let exp_f: Vec<C<T>> = model.profile.iter().map(|f| f.exp()).collect();
    let values = (0..xi.len())
        .map(|m| {
            xi.member_values(m)
                .iter()
                .flat_map(|x| exp_f.iter().map(move |e| *e * *x))
                .collect()
        })
        .collect();
    Ok(LiftedFamily { model: model.clone(), source: xi.clone(), values })
}

impl<T: Real> LiftedFamily<T> {
    pub fn model(&self) -> &Arc<IwasawaModel<T>> {
        &self.model
    }

    pub fn source(&self) -> &OrthonormalFamily<T> {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn member_values(&self, m: usize) -> &[C<T>] {
        &self.values[m]
    }

    /// Values of every member at `a n = 1`.
    pub fn restriction_values(&self) -> Vec<Vec<C<T>>> {
        let an = self.model.an_len();
        let id = self.model.identity_index();
        self.values.iter().map(|v| (0..self.model.k.len()).map(|k| v[k * an + id]).collect()).collect()
    }

    /// The restricted family on `K`, with the source's block layout.
    pub fn restrict_to_k(&self) -> Result<OrthonormalFamily<T>> {
        let blocks = self.source.blocks().iter().map(|b| (b.label.clone(), b.size)).collect();
        OrthonormalFamily::new(self.model.k.clone(), blocks, self.restriction_values())
    }

    /// `max |chi(k, 1) - xi(k)|`; zero when the restriction is exact.
    pub fn restriction_residual(&self) -> T {
        let mut worst = T::zero();
        for (m, r) in self.restriction_values().iter().enumerate() {
            for (x, y) in r.iter().zip(self.source.member_values(m)) {
                worst = worst.max((*x - *y).norm());
            }
        }
        worst
    }

    /// Gram matrix over `K x AN` with weights `dk da dn`.
    pub fn gram(&self) -> Mat<T> {
        let wk = self.model.k.weights();
        let wan = self.model.an_weights();
        let w: Vec<T> = wk.iter().flat_map(|a| wan.iter().map(move |b| *a * *b)).collect();
        let m = self.values.len();
        let mut g = Mat::zeros(m, m);
        for i in 0..m {
            for j in i..m {
                let v = crate::hilbert::weighted_dot(&w, &self.values[i], &self.values[j]);
                g[(i, j)] = v;
                g[(j, i)] = v.conj();
            }
        }
        g
    }

    /// `max |<chi_a, chi_b> - <xi_a, xi_b>|`.
    pub fn gram_residual(&self) -> T {
        self.gram().max_abs_diff(&self.source.gram())
    }

    /// `max |‖chi_a‖^2 - 1|`.
    pub fn norm_residual(&self) -> T {
        let g = self.gram();
        (0..g.rows()).map(|i| (g[(i, i)].re - T::one()).abs()).fold(T::zero(), T::max)
    }
}

/// Restricts the lifted family to `K` and measures its semicompleteness there.
pub fn check_k_semicomplete<T: Real>(
    lifted: &LiftedFamily<T>,
    cat_k: &RepCatalog<T>,
    weights: &ExpansionWeights<T>,
    testset: &TestSet<T>,
) -> Result<SemicompletenessReport<T>> {
    let restricted = lifted.restrict_to_k()?;
    semicompleteness_defect(&restricted, weights, cat_k, testset)
}
