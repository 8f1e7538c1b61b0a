//! Concrete compact groups with normalized Haar quadrature.
//!
//! Three families are supported: finite permutation groups (exact Haar
//! integration by uniform averaging), the circle group with a uniform grid,
//! and SU(2) with a product rule in Euler angles (uniform in the two
//! azimuthal angles, Gauss-Legendre in `cos beta`).

mod finite;
mod su2;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use finite::FiniteGroup;
pub use su2::Su2Element;

use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;
use crate::scalar::{cz, C, Real};

/// Parsed group description, e.g. `zn:12`, `dihedral:5`, `sym:3`,
/// `circle:64`, `su2:j=3,quad=16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Circle { nodes: usize },
    /// `twice_jmax` is `2 * jmax` so half-integer spins stay exact.
    Su2 { twice_jmax: u32, quad: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Finite,
    Circle,
    Su2,
}

impl GroupSpec {
    pub fn kind(&self) -> GroupKind {
        match self {
            GroupSpec::Cyclic(_) | GroupSpec::Dihedral(_) | GroupSpec::Symmetric(_) => GroupKind::Finite,
            GroupSpec::Circle { .. } => GroupKind::Circle,
            GroupSpec::Su2 { .. } => GroupKind::Su2,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupSpec::Cyclic(n) => write!(f, "zn:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "sym:{n}"),
            GroupSpec::Circle { nodes } => write!(f, "circle:{nodes}"),
            GroupSpec::Su2 { twice_jmax, quad } => {
                write!(f, "su2:j={},quad={quad}", format_half_integer(twice_jmax))
            }
        }
    }
}

/// Formats `k / 2` as `"3"` or `"3/2"`.
pub fn format_half_integer(twice: u32) -> String {
    if twice.is_multiple_of(2) {
        format!("{}", twice / 2)
    } else {
        format!("{twice}/2")
    }
}

/// Parses `"3"`, `"3/2"` or `"1.5"` into twice the value.
pub fn parse_half_integer(s: &str) -> Result<u32> {
    let s = s.trim();
    let bad = || Error::Parse(format!("`{s}` is not a nonnegative half-integer"));
    if let Some((num, den)) = s.split_once('/') {
        let num: u32 = num.trim().parse().map_err(|_| bad())?;
        return match den.trim() {
            "2" => Ok(num),
            "1" => Ok(2 * num),
            _ => Err(bad()),
        };
    }
    if let Ok(k) = s.parse::<u32>() {
        return Ok(2 * k);
    }
    let x: f64 = s.parse().map_err(|_| bad())?;
    let twice = 2.0 * x;
    if x < 0.0 || (twice - twice.round()).abs() > 1e-12 {
        return Err(bad());
    }
    Ok(twice.round() as u32)
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let unsupported = || Error::UnsupportedGroup(s.to_string());
        let (kind, arg) = s.split_once(':').ok_or_else(unsupported)?;
        let int = |a: &str| a.trim().parse::<usize>().map_err(|_| unsupported());
        let spec = match kind.trim().to_ascii_lowercase().as_str() {
            "zn" | "cyclic" => GroupSpec::Cyclic(int(arg)?),
            "dihedral" | "dn" => GroupSpec::Dihedral(int(arg)?),
            "sym" | "symmetric" => GroupSpec::Symmetric(int(arg)?),
            "circle" | "u1" => GroupSpec::Circle { nodes: int(arg)? },
            "su2" => {
                let mut twice_jmax = None;
                let mut quad = None;
                for part in arg.split(',') {
                    let (k, v) = part.split_once('=').ok_or_else(unsupported)?;
                    match k.trim() {
                        "j" | "jmax" => twice_jmax = Some(parse_half_integer(v)?),
                        "quad" => quad = Some(int(v)?),
                        _ => return Err(unsupported()),
                    }
                }
                let twice_jmax = twice_jmax.ok_or_else(unsupported)?;
                let quad = quad.unwrap_or(2 * twice_jmax as usize + 1);
                GroupSpec::Su2 { twice_jmax, quad }
            }
            _ => return Err(unsupported()),
        };
        Ok(spec)
    }
}

/// A point of a group: an element index (finite), an angle (circle), or a
/// special unitary matrix (SU(2)).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GroupElement<T> {
    Finite(usize),
    Circle(T),
    Su2(Su2Element<T>),
}

#[derive(Clone, Debug)]
enum Structure {
    Finite(FiniteGroup),
    Circle,
    Su2,
}

/// A compact group together with the quadrature grid and normalized Haar
/// weights used for every integral in the crate. Immutable once built.
#[derive(Clone, Debug)]
pub struct GroupModel<T> {
    spec: GroupSpec,
    structure: Structure,
    nodes: Vec<GroupElement<T>>,
    weights: Vec<T>,
}

impl<T: Real> GroupModel<T> {
    pub fn new(spec: GroupSpec) -> Result<Self> {
        match spec {
            GroupSpec::Cyclic(n) => Self::finite(spec, FiniteGroup::cyclic(n)?),
            GroupSpec::Dihedral(n) => Self::finite(spec, FiniteGroup::dihedral(n)?),
            GroupSpec::Symmetric(n) => {
                if !(3..=4).contains(&n) {
                    return Err(Error::UnsupportedGroup(format!("sym:{n} (only sym:3 and sym:4)")));
                }
                Self::finite(spec, FiniteGroup::symmetric(n)?)
            }
            GroupSpec::Circle { nodes } => {
                if nodes == 0 {
                    return Err(Error::QuadratureTooSmall("circle needs at least one node".into()));
                }
                let step = T::TAU() / T::of(nodes as f64);
                let w = T::one() / T::of(nodes as f64);
                Ok(Self {
                    spec,
                    structure: Structure::Circle,
                    nodes: (0..nodes).map(|k| GroupElement::Circle(step * T::of(k as f64))).collect(),
                    weights: vec![w; nodes],
                })
            }
            GroupSpec::Su2 { twice_jmax, quad } => {
                // alpha, gamma frequencies reach 2*jmax in units of 1/2 over
                // [0, 4pi); the cos(beta) integrand has degree <= 2*jmax.
                let need_uniform = 2 * twice_jmax as usize + 1;
                let need_gauss = twice_jmax as usize + 1;
                if quad < need_uniform.max(need_gauss) {
                    return Err(Error::QuadratureTooSmall(format!(
                        "su2 with jmax={} needs quad >= {}, got {quad}",
                        format_half_integer(twice_jmax),
                        need_uniform
                    )));
                }
                let (xs, ws) = gauss_legendre::<f64>(quad)?;
                let qf = quad as f64;
                let mut nodes = Vec::with_capacity(quad * quad * quad);
                let mut weights = Vec::with_capacity(quad * quad * quad);
                for a in 0..quad {
                    let alpha = std::f64::consts::TAU * a as f64 / qf;
                    for (x, wx) in xs.iter().zip(&ws) {
                        let beta = x.clamp(-1.0, 1.0).acos();
                        for c in 0..quad {
                            let gamma = 2.0 * std::f64::consts::TAU * c as f64 / qf;
                            nodes.push(GroupElement::Su2(Su2Element::from_euler(
                                T::of(alpha),
                                T::of(beta),
                                T::of(gamma),
                            )));
                            weights.push(T::of(wx / (2.0 * qf * qf)));
                        }
                    }
                }
                Ok(Self { spec, structure: Structure::Su2, nodes, weights })
            }
        }
    }

    fn finite(spec: GroupSpec, g: FiniteGroup) -> Result<Self> {
        let n = g.order();
        let w = T::one() / T::of(n as f64);
        Ok(Self {
            spec,
            nodes: (0..n).map(GroupElement::Finite).collect(),
            weights: vec![w; n],
            structure: Structure::Finite(g),
        })
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn kind(&self) -> GroupKind {
        self.spec.kind()
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.structure, Structure::Finite(_))
    }

    pub fn finite_group(&self) -> Option<&FiniteGroup> {
        match &self.structure {
            Structure::Finite(g) => Some(g),
            _ => None,
        }
    }

    /// Number of quadrature nodes (the group order for finite groups).
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[GroupElement<T>] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Gram tolerance appropriate to this group's integration scheme.
    pub fn gram_tol(&self) -> f64 {
        if self.is_finite() {
            T::FINITE_TOL
        } else {
            T::CONTINUOUS_TOL
        }
    }

    pub fn identity(&self) -> GroupElement<T> {
        match self.structure {
            Structure::Finite(_) => GroupElement::Finite(0),
            Structure::Circle => GroupElement::Circle(T::zero()),
            Structure::Su2 => GroupElement::Su2(Su2Element::identity()),
        }
    }

    pub fn multiply(&self, g: &GroupElement<T>, h: &GroupElement<T>) -> Result<GroupElement<T>> {
        match (&self.structure, g, h) {
            (Structure::Finite(fg), GroupElement::Finite(a), GroupElement::Finite(b))
                if *a < fg.order() && *b < fg.order() =>
            {
                Ok(GroupElement::Finite(fg.mul(*a, *b)))
            }
            (Structure::Circle, GroupElement::Circle(a), GroupElement::Circle(b)) => {
                Ok(GroupElement::Circle(reduce_angle(*a + *b)))
            }
            (Structure::Su2, GroupElement::Su2(a), GroupElement::Su2(b)) => Ok(GroupElement::Su2(a.mul(b))),
            _ => Err(Error::InvalidSpec(format!("element does not belong to {}", self.spec))),
        }
    }

    pub fn inverse(&self, g: &GroupElement<T>) -> Result<GroupElement<T>> {
        match (&self.structure, g) {
            (Structure::Finite(fg), GroupElement::Finite(a)) if *a < fg.order() => {
                Ok(GroupElement::Finite(fg.inv(*a)))
            }
            (Structure::Circle, GroupElement::Circle(a)) => Ok(GroupElement::Circle(reduce_angle(-*a))),
            (Structure::Su2, GroupElement::Su2(a)) => Ok(GroupElement::Su2(a.inverse())),
            _ => Err(Error::InvalidSpec(format!("element does not belong to {}", self.spec))),
        }
    }

    /// `sum_k w_k phi(g_k)` over the quadrature grid.
    pub fn haar_integrate(&self, mut phi: impl FnMut(&GroupElement<T>) -> C<T>) -> C<T> {
        self.nodes.iter().zip(&self.weights).fold(cz(), |acc, (g, w)| acc + phi(g) * *w)
    }

    /// Haar integral of a function given by its values on the grid.
    pub fn haar_integrate_values(&self, values: &[C<T>]) -> Result<C<T>> {
        if values.len() != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), found: values.len() });
        }
        Ok(values.iter().zip(&self.weights).fold(cz(), |acc, (v, w)| acc + *v * *w))
    }

    /// Two models describe the same grid.
    pub fn same_as(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || self.spec == other.spec
    }

    pub(crate) fn check_same(&self, other: &Self) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::GroupMismatch { left: self.spec.to_string(), right: other.spec.to_string() })
        }
    }
}

/// Reduces an angle into `[0, 2pi)`.
pub fn reduce_angle<T: Real>(theta: T) -> T {
    let tau = T::TAU();
    let r = theta % tau;
    let r = if r < T::zero() { r + tau } else { r };
    if r >= tau {
        T::zero()
    } else {
        r
    }
}

/// Convenience constructor from a spec string.
pub fn make_group<T: Real>(spec: &str) -> Result<GroupModel<T>> {
    GroupModel::new(spec.parse()?)
}

#[cfg(test)]
mod tests {
    use num_complex::Complex;
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["zn:12", "dihedral:5", "sym:3", "circle:64", "su2:j=3,quad=16", "su2:j=3/2,quad=7"] {
            let spec: GroupSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!("su2:j=1.5,quad=9".parse::<GroupSpec>().unwrap(), GroupSpec::Su2 { twice_jmax: 3, quad: 9 });
        assert!("foo:3".parse::<GroupSpec>().is_err());
        assert!("zn".parse::<GroupSpec>().is_err());
        assert!("su2:j=-1,quad=3".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn trivial_and_cyclic_weights() {
        let g = make_group::<f64>("zn:1").unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.weights(), &[1.0]);
        let g = make_group::<f64>("zn:4").unwrap();
        assert_eq!(g.weights(), &[0.25; 4]);
    }

    #[test]
    fn unsupported_specs() {
        assert!(make_group::<f64>("sym:5").is_err());
        assert!(make_group::<f64>("dihedral:2").is_err());
        assert!(make_group::<f64>("zn:0").is_err());
        assert!(make_group::<f64>("circle:0").is_err());
        assert!(matches!(make_group::<f64>("su2:j=3,quad=12"), Err(Error::QuadratureTooSmall(_))));
    }

    #[test]
    fn weights_are_normalized() {
        for s in ["zn:12", "dihedral:5", "sym:4", "circle:64", "su2:j=1,quad=5", "su2:j=3,quad=16"] {
            let g = make_group::<f64>(s).unwrap();
            let total: f64 = g.weights().iter().sum();
            assert!((total - 1.0).abs() < 1e-12, "{s}: {total}");
            assert!(g.weights().iter().all(|w| *w >= 0.0));
        }
    }

    #[test]
    fn haar_integrate_examples() {
        let g = make_group::<f64>("zn:4").unwrap();
        let one = g.haar_integrate(|_| Complex::new(1.0, 0.0));
        assert!((one - Complex::new(1.0, 0.0)).norm() < 1e-15);
        let roots = g.haar_integrate(|e| match e {
            GroupElement::Finite(k) => Complex::from_polar(1.0, std::f64::consts::TAU * *k as f64 / 4.0),
            _ => unreachable!(),
        });
        assert!(roots.norm() < 1e-15);
        let c = make_group::<f64>("circle:8").unwrap();
        let v = c.haar_integrate(|e| match e {
            GroupElement::Circle(t) => Complex::from_polar(1.0, *t) * Complex::from_polar(1.0, -*t),
            _ => unreachable!(),
        });
        assert!((v - Complex::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn circle_grid_kills_nonzero_frequencies() {
        let n = 16;
        let g = make_group::<f64>(&format!("circle:{n}")).unwrap();
        for m in 1..n as i64 {
            for s in [m, -m] {
                let v = g.haar_integrate(|e| match e {
                    GroupElement::Circle(t) => Complex::from_polar(1.0, s as f64 * *t),
                    _ => unreachable!(),
                });
                assert!(v.norm() < 1e-12, "m={s}: {v}");
            }
        }
    }

    #[test]
    fn identity_and_reduction() {
        let c = make_group::<f64>("circle:8").unwrap();
        let g = GroupElement::Circle(5.0);
        let h = GroupElement::Circle(4.0);
        match c.multiply(&g, &h).unwrap() {
            GroupElement::Circle(t) => assert!((t - (9.0 - std::f64::consts::TAU)).abs() < 1e-14),
            _ => unreachable!(),
        }
        assert_eq!(c.multiply(&c.identity(), &g).unwrap(), g);
        assert_eq!(reduce_angle(-1e-20f64), 0.0);
        let s = make_group::<f64>("sym:3").unwrap();
        for k in 0..6 {
            let e = GroupElement::Finite(k);
            assert_eq!(s.multiply(&s.identity(), &e).unwrap(), e);
            assert_eq!(s.multiply(&e, &s.identity()).unwrap(), e);
        }
    }

    #[test]
    fn su2_nodes_are_special_unitary() {
        let g = make_group::<f64>("su2:j=2,quad=9").unwrap();
        for e in g.nodes() {
            match e {
                GroupElement::Su2(u) => assert!(u.residual() < 1e-12),
                _ => unreachable!(),
            }
        }
    }
}
