//! Riemann-Lebesgue omission families, the semicompleteness defect and the
//! weighted semi-Fourier expansion.

use crate::catalog::{IrrepLabel, RepCatalog};
use crate::error::{Error, Result};
use crate::functions::TestSet;
use crate::hilbert::{coefficients, ExpansionWeights, L2Function, OrthonormalFamily};
use crate::peter_weyl::{fourier_transform, synthesize};
use crate::scalar::{cz, C, Real};

/// A finite set of catalog labels to drop from the Peter-Weyl family.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OmissionSpec {
    omitted: Vec<IrrepLabel>,
}

impl OmissionSpec {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn new(labels: impl IntoIterator<Item = IrrepLabel>) -> Self {
        let mut omitted: Vec<IrrepLabel> = Vec::new();
        for l in labels {
            if !omitted.contains(&l) {
                omitted.push(l);
            }
        }
        Self { omitted }
    }

    /// Parses textual labels against a catalog.
    pub fn parse<T: Real>(cat: &RepCatalog<T>, labels: &[impl AsRef<str>]) -> Result<Self> {
        let parsed = labels.iter().map(|s| cat.parse_label(s.as_ref())).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(parsed))
    }

    pub fn labels(&self) -> &[IrrepLabel] {
        &self.omitted
    }

    pub fn is_empty(&self) -> bool {
        self.omitted.is_empty()
    }

    pub fn contains(&self, label: &IrrepLabel) -> bool {
        self.omitted.contains(label)
    }

    /// Checks the labels belong to the catalog and returns the retained ones.
    pub fn retained<T: Real>(&self, cat: &RepCatalog<T>) -> Result<Vec<IrrepLabel>> {
        for l in &self.omitted {
            cat.index_of(l)?;
        }
        let kept: Vec<IrrepLabel> = cat.labels().into_iter().filter(|l| !self.contains(l)).collect();
        if kept.is_empty() {
            return Err(Error::EmptyRetainedSet);
        }
        Ok(kept)
    }
}

/// `{sqrt(d) u_ij^lambda : lambda not omitted}`.
pub fn build_riemann_lebesgue_family<T: Real>(cat: &RepCatalog<T>, omit: &OmissionSpec) -> Result<OrthonormalFamily<T>> {
    let kept = omit.retained(cat)?;
    cat.family_of(&kept)
}

/// `sum_{omitted lambda} d(lambda) sum_ij |<f, u_ij^lambda>|`, an upper bound
/// on the distance between the full expansion and the omission expansion.
pub fn omission_tail_bound<T: Real>(f: &L2Function<T>, cat: &RepCatalog<T>, omit: &OmissionSpec) -> Result<T> {
    f.group().check_same(cat.group())?;
    omit.retained(cat)?;
    let w = cat.group().weights();
    let mut total = T::zero();
    for label in omit.labels() {
        total = total + label_tail(f, cat, label, w)?;
    }
    Ok(total)
}

fn label_tail<T: Real>(f: &L2Function<T>, cat: &RepCatalog<T>, label: &IrrepLabel, w: &[T]) -> Result<T> {
    let d = label.degree;
    let mut s = T::zero();
    for i in 0..d {
        for j in 0..d {
            s = s + crate::hilbert::weighted_dot(w, f.values(), cat.coefficient_grid(label, i, j)?).norm();
        }
    }
    Ok(T::of(d as f64) * s)
}

/// Largest suffix of the catalog ordering whose cumulative tail bound stays
/// below `epsilon` for every test function. At least one label is retained.
pub fn choose_omissions<T: Real>(cat: &RepCatalog<T>, testset: &[L2Function<T>], epsilon: f64) -> Result<OmissionSpec> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    if testset.is_empty() {
        return Err(Error::InvalidSpec("choose_omissions needs a nonempty test set".into()));
    }
    for f in testset {
        f.group().check_same(cat.group())?;
    }
    let w = cat.group().weights();
    let eps = T::of(epsilon);
    let labels = cat.labels();
    let mut cumulative = vec![T::zero(); testset.len()];
    let mut omitted = Vec::new();
    for label in labels.iter().skip(1).rev() {
        let tails = testset.iter().map(|f| label_tail(f, cat, label, w)).collect::<Result<Vec<T>>>()?;
        if cumulative.iter().zip(&tails).all(|(c, t)| *c + *t < eps) {
            cumulative.iter_mut().zip(&tails).for_each(|(c, t)| *c = *c + *t);
            omitted.push(*label);
        } else {
            break;
        }
    }
    omitted.reverse();
    Ok(OmissionSpec::new(omitted))
}

/// `sum_blocks sum_ij gamma_j beta_ij <f, chi_ij> chi_ij`.
pub fn semi_fourier_expand<T: Real>(
    f: &L2Function<T>,
    family: &OrthonormalFamily<T>,
    weights: &ExpansionWeights<T>,
) -> Result<L2Function<T>> {
    if weights.n() != family.max_block_size() {
        return Err(Error::ShapeMismatch(format!(
            "weights have n = {} but the largest block has size {}",
            weights.n(),
            family.max_block_size()
        )));
    }
    let diag = validate_weights(weights);
    if let Some(z) = diag.zero_entries.first() {
        return Err(Error::ZeroWeight(z.clone()));
    }
    let coeffs = coefficients(f, family)?;
    let mut values = vec![cz(); f.group().len()];
    for block in family.blocks() {
        for i in 0..block.size {
            for j in 0..block.size {
                let idx = block.member(i, j);
                let c: C<T> = weights.weight(i, j) * coeffs[idx];
                for (v, x) in values.iter_mut().zip(family.member_values(idx)) {
                    *v = *v + c * *x;
                }
            }
        }
    }
    L2Function::new(f.group().clone(), values)
}

/// Outcome of `validate_weights`. Empty means admissible.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightDiagnostic {
    /// `(i, |gamma_i beta_ii - 1|)` for every violating diagonal index.
    pub diagonal_violations: Vec<(usize, f64)>,
    /// Human-readable positions of zero entries, e.g. `gamma[2]`, `beta[0][1]`.
    pub zero_entries: Vec<String>,
}

impl WeightDiagnostic {
    pub fn is_admissible(&self) -> bool {
        self.diagonal_violations.is_empty() && self.zero_entries.is_empty()
    }
}

pub const WEIGHT_PRODUCT_TOL: f64 = 1e-12;

/// Flags every `i` with `|gamma_i beta_ii - 1| > 1e-12` and every zero entry.
pub fn validate_weights<T: Real>(weights: &ExpansionWeights<T>) -> WeightDiagnostic {
    let n = weights.n();
    let one = C::new(T::one(), T::zero());
    let mut diagonal_violations = Vec::new();
    let mut zero_entries = Vec::new();
    for (i, g) in weights.gamma().iter().enumerate() {
        if g.norm_sqr() == T::zero() {
            zero_entries.push(format!("gamma[{i}]"));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if weights.beta()[(i, j)].norm_sqr() == T::zero() {
                zero_entries.push(format!("beta[{i}][{j}]"));
            }
        }
    }
    for i in 0..n {
        let r = (weights.gamma()[i] * weights.beta()[(i, i)] - one).norm().to_f64_lossy();
        if r.is_nan() || r > WEIGHT_PRODUCT_TOL {
            diagonal_violations.push((i, r));
        }
    }
    WeightDiagnostic { diagonal_violations, zero_entries }
}

#[derive(Clone, Debug)]
pub struct FunctionDefect<T> {
    pub name: String,
    pub defect: T,
}

/// Sup-defect of a weighted family against the full Peter-Weyl expansion
/// over an explicit test set.
#[derive(Clone, Debug)]
pub struct SemicompletenessReport<T> {
    pub test_set: String,
    pub per_function: Vec<FunctionDefect<T>>,
    pub max_defect: T,
    pub weights: ExpansionWeights<T>,
    pub epsilon: Option<f64>,
    pub weight_diagnostic: WeightDiagnostic,
}

impl<T: Real> SemicompletenessReport<T> {
    /// `max_defect < epsilon`, when an epsilon was claimed.
    pub fn within_epsilon(&self) -> Option<bool> {
        self.epsilon.map(|e| self.max_defect.to_f64_lossy() < e)
    }
}

/// Per function: `|| synthesize(fourier_transform(f)) - semi_fourier_expand(f) ||_2`.
pub fn semicompleteness_defect<T: Real>(
    family: &OrthonormalFamily<T>,
    weights: &ExpansionWeights<T>,
    cat: &RepCatalog<T>,
    testset: &TestSet<T>,
) -> Result<SemicompletenessReport<T>> {
    family.group().check_same(cat.group())?;
    let mut per_function = Vec::with_capacity(testset.len());
    let mut max_defect = T::zero();
    for (name, f) in testset.iter() {
        let full = synthesize(&fourier_transform(f, cat)?, cat)?;
        let partial = semi_fourier_expand(f, family, weights)?;
        let defect = full.distance(&partial)?;
        max_defect = max_defect.max(defect);
        per_function.push(FunctionDefect { name: name.to_string(), defect });
    }
    Ok(SemicompletenessReport {
        test_set: testset.descriptor().to_string(),
        per_function,
        max_defect,
        weights: weights.clone(),
        epsilon: None,
        weight_diagnostic: validate_weights(weights),
    })
}
