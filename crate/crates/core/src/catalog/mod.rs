//! The dual object of a group up to a truncation: labels, degrees, ordering
//! magnitudes and matrix coefficients cached on the quadrature grid.

mod finite_irreps;
pub mod wigner;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{format_half_integer, parse_half_integer, GroupElement, GroupKind, GroupModel, GroupSpec};
use crate::hilbert::OrthonormalFamily;
use crate::linalg::Mat;
use crate::scalar::{cast_complex, C, Real};

/// Which irrep of which kind of group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelPayload {
    /// Position in the finite group's sorted irrep list.
    Finite(usize),
    /// Frequency `m` of the character `e^{i m theta}`.
    Circle(i64),
    /// Spin `j = twice_j / 2`.
    Su2 { twice_j: u32 },
}

/// An element of the dual object together with its degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IrrepLabel {
    pub payload: LabelPayload,
    pub degree: usize,
}

impl IrrepLabel {
    /// Ordering magnitude: `|m|` on the circle, `j` on SU(2), the catalog
    /// index on finite groups.
    pub fn magnitude(&self) -> f64 {
        match self.payload {
            LabelPayload::Finite(k) => k as f64,
            LabelPayload::Circle(m) => m.unsigned_abs() as f64,
            LabelPayload::Su2 { twice_j } => twice_j as f64 / 2.0,
        }
    }

    pub fn kind(&self) -> GroupKind {
        match self.payload {
            LabelPayload::Finite(_) => GroupKind::Finite,
            LabelPayload::Circle(_) => GroupKind::Circle,
            LabelPayload::Su2 { .. } => GroupKind::Su2,
        }
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.payload {
            LabelPayload::Finite(k) => write!(f, "{k}"),
            LabelPayload::Circle(m) => write!(f, "{m}"),
            LabelPayload::Su2 { twice_j } => f.write_str(&format_half_integer(twice_j)),
        }
    }
}

/// How much of the dual object to keep.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub enum Truncation {
    /// Everything the quadrature supports (the full list for finite groups).
    #[default]
    Full,
    /// All labels with `|lambda| <= bound`.
    MaxMagnitude(f64),
    /// The first `count` labels in catalog order.
    MaxCount(usize),
}

#[derive(Clone, Debug)]
enum RepData<T> {
    Finite(Vec<Mat<T>>),
    Circle(i64),
    Su2(u32),
}

#[derive(Clone, Debug)]
struct IrrepEntry<T> {
    label: IrrepLabel,
    data: RepData<T>,
    /// `grid[(i * d + j) * nodes + k] = u_ij(g_k)`.
    grid: Vec<C<T>>,
}

/// Irreps of a group up to a truncation, ordered by nondecreasing `|lambda|`.
#[derive(Clone, Debug)]
pub struct RepCatalog<T> {
    group: Arc<GroupModel<T>>,
    entries: Vec<IrrepEntry<T>>,
}

impl<T: Real> RepCatalog<T> {
    pub fn build(group: Arc<GroupModel<T>>, truncation: Truncation) -> Result<Self> {
        let mut entries: Vec<IrrepEntry<T>> = match group.spec() {
            GroupSpec::Cyclic(_) | GroupSpec::Dihedral(_) | GroupSpec::Symmetric(_) => {
                let fg = group.finite_group().expect("finite spec has finite structure");
                let irreps = finite_irreps::construct(fg)?;
                irreps
                    .into_iter()
                    .enumerate()
                    .map(|(k, ir)| {
                        let degree = ir.degree();
                        let mats = ir.matrices.into_iter().map(|m| m.map(cast_complex::<f64, T>)).collect();
                        IrrepEntry {
                            label: IrrepLabel { payload: LabelPayload::Finite(k), degree },
                            data: RepData::Finite(mats),
                            grid: Vec::new(),
                        }
                    })
                    .collect()
            }
            GroupSpec::Circle { nodes } => {
                let supported = (nodes.saturating_sub(1) / 2) as i64;
                let band = match truncation {
                    Truncation::Full => supported,
                    Truncation::MaxMagnitude(b) => {
                        if b < 0.0 {
                            return Err(Error::InvalidSpec(format!("negative truncation {b}")));
                        }
                        b.floor() as i64
                    }
                    Truncation::MaxCount(c) => (c as i64) / 2,
                };
                if band > supported {
                    return Err(Error::TruncationTooLarge(format!(
                        "circle:{nodes} supports |m| <= {supported}, requested {band}"
                    )));
                }
                let mut out = Vec::new();
                for m in 0..=band {
                    let ms: &[i64] = if m == 0 { &[0] } else { &[-m, m] };
                    for &m in ms {
                        out.push(IrrepEntry {
                            label: IrrepLabel { payload: LabelPayload::Circle(m), degree: 1 },
                            data: RepData::Circle(m),
                            grid: Vec::new(),
                        });
                    }
                }
                out
            }
            GroupSpec::Su2 { twice_jmax, .. } => {
                let top = match truncation {
                    Truncation::Full => twice_jmax,
                    Truncation::MaxMagnitude(b) => {
                        if b < 0.0 {
                            return Err(Error::InvalidSpec(format!("negative truncation {b}")));
                        }
                        (2.0 * b + 1e-9).floor() as u32
                    }
                    Truncation::MaxCount(c) => (c as u32).saturating_sub(1),
                };
                if top > twice_jmax {
                    return Err(Error::TruncationTooLarge(format!(
                        "grid supports j <= {}, requested {}",
                        format_half_integer(twice_jmax),
                        format_half_integer(top)
                    )));
                }
                (0..=top)
                    .map(|tj| IrrepEntry {
                        label: IrrepLabel { payload: LabelPayload::Su2 { twice_j: tj }, degree: tj as usize + 1 },
                        data: RepData::Su2(tj),
                        grid: Vec::new(),
                    })
                    .collect()
            }
        };
        match truncation {
            Truncation::MaxCount(c) => entries.truncate(c),
            Truncation::MaxMagnitude(b) if group.is_finite() => entries.retain(|e| e.label.magnitude() <= b),
            _ => {}
        }
        if entries.is_empty() {
            return Err(Error::InvalidSpec("truncation leaves an empty catalog".into()));
        }
        let mut cat = Self { group, entries };
        cat.fill_grids();
        Ok(cat)
    }

    fn fill_grids(&mut self) {
        let nodes = self.group.len();
        for idx in 0..self.entries.len() {
            let d = self.entries[idx].label.degree;
            let mut grid = vec![Complex::new(T::zero(), T::zero()); d * d * nodes];
            for (k, g) in self.group.nodes().iter().enumerate() {
                let u = self.evaluate(&self.entries[idx].data, g);
                for i in 0..d {
                    for j in 0..d {
                        grid[(i * d + j) * nodes + k] = u[(i, j)];
                    }
                }
            }
            self.entries[idx].grid = grid;
        }
    }

    fn evaluate(&self, data: &RepData<T>, g: &GroupElement<T>) -> Mat<T> {
        match (data, g) {
            (RepData::Finite(mats), GroupElement::Finite(k)) => mats[*k].clone(),
            (RepData::Circle(m), GroupElement::Circle(theta)) => {
                Mat::from_vec(1, 1, vec![Complex::from_polar(T::one(), T::of(*m as f64) * *theta)])
            }
            (RepData::Su2(tj), GroupElement::Su2(u)) => wigner::spin_matrix(*tj, u),
            _ => unreachable!("element kind checked by caller"),
        }
    }

    pub fn group(&self) -> &Arc<GroupModel<T>> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn labels(&self) -> Vec<IrrepLabel> {
        self.entries.iter().map(|e| e.label).collect()
    }

    pub fn label(&self, index: usize) -> IrrepLabel {
        self.entries[index].label
    }

    pub fn index_of(&self, label: &IrrepLabel) -> Result<usize> {
        self.entries
            .iter()
            .position(|e| e.label == *label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Resolves the textual form produced by `Display` (`"2"`, `"-3"`, `"1/2"`).
    pub fn parse_label(&self, s: &str) -> Result<IrrepLabel> {
        let s = s.trim();
        let unknown = || Error::UnknownLabel(s.to_string());
        let payload = match self.group.kind() {
            GroupKind::Finite => LabelPayload::Finite(s.parse().map_err(|_| unknown())?),
            GroupKind::Circle => LabelPayload::Circle(s.parse().map_err(|_| unknown())?),
            GroupKind::Su2 => LabelPayload::Su2 { twice_j: parse_half_integer(s).map_err(|_| unknown())? },
        };
        self.entries.iter().find(|e| e.label.payload == payload).map(|e| e.label).ok_or_else(unknown)
    }

    /// Sum of squared degrees over the catalog.
    pub fn dimension_count(&self) -> usize {
        self.entries.iter().map(|e| e.label.degree * e.label.degree).sum()
    }

    /// `u^lambda(g)`.
    pub fn matrix(&self, label: &IrrepLabel, g: &GroupElement<T>) -> Result<Mat<T>> {
        let idx = self.index_of(label)?;
        let ok = match (g, self.group.kind()) {
            (GroupElement::Finite(k), GroupKind::Finite) => *k < self.group.len(),
            (GroupElement::Circle(_), GroupKind::Circle) | (GroupElement::Su2(_), GroupKind::Su2) => true,
            _ => false,
        };
        if !ok {
            return Err(Error::InvalidSpec(format!("element does not belong to {}", self.group.spec())));
        }
        Ok(self.evaluate(&self.entries[idx].data, g))
    }

    /// Entry `(i, j)` (zero-based) of `u^lambda(g)`.
    pub fn matrix_coefficient(&self, label: &IrrepLabel, i: usize, j: usize, g: &GroupElement<T>) -> Result<C<T>> {
        check_indices(label, i, j)?;
        Ok(self.matrix(label, g)?[(i, j)])
    }

    /// Cached values of `u_ij^lambda` on the quadrature nodes.
    pub fn coefficient_grid(&self, label: &IrrepLabel, i: usize, j: usize) -> Result<&[C<T>]> {
        check_indices(label, i, j)?;
        let e = &self.entries[self.index_of(label)?];
        let n = self.group.len();
        let d = e.label.degree;
        let start = (i * d + j) * n;
        Ok(&e.grid[start..start + n])
    }

    /// The standard Peter-Weyl family `{sqrt(d) u_ij}` over the whole catalog.
    pub fn peter_weyl_basis(&self) -> Result<OrthonormalFamily<T>> {
        self.family_of(&self.labels())
    }

    /// `{sqrt(d) u_ij}` for the given labels, in catalog order.
    pub(crate) fn family_of(&self, keep: &[IrrepLabel]) -> Result<OrthonormalFamily<T>> {
        let n = self.group.len();
        let mut blocks = Vec::new();
        let mut members = Vec::new();
        for e in self.entries.iter().filter(|e| keep.contains(&e.label)) {
            let d = e.label.degree;
            let s = T::of(d as f64).sqrt();
            blocks.push((e.label.to_string(), d));
            for ij in 0..d * d {
                members.push(e.grid[ij * n..(ij + 1) * n].iter().map(|z| *z * s).collect());
            }
        }
        OrthonormalFamily::new(self.group.clone(), blocks, members)
    }
}

fn check_indices(label: &IrrepLabel, i: usize, j: usize) -> Result<()> {
    if i >= label.degree || j >= label.degree {
        return Err(Error::IndexOutOfRange(format!("({i}, {j}) for degree {} label {label}", label.degree)));
    }
    Ok(())
}

/// Convenience: build a catalog straight from a group.
pub fn build_catalog<T: Real>(group: Arc<GroupModel<T>>, truncation: Truncation) -> Result<RepCatalog<T>> {
    RepCatalog::build(group, truncation)
}
