//! Peter-Weyl expansions on compact groups, semicomplete families of matrix
//! coefficients, prime-Parseval membership and Iwasawa-type lifts.
//!
//! The numerical core is generic over the real scalar (`f32` or `f64`);
//! the aliases at the crate root fix it to `f64`, with `F32*` variants for
//! single precision.
//!
//! ```
//! use std::sync::Arc;
//! use semiweyl::{make_group, Catalog, Function, Truncation};
//!
//! let g = Arc::new(make_group::<f64>("sym:3").unwrap());
//! let cat = Catalog::build(g.clone(), Truncation::Full).unwrap();
//! assert_eq!(cat.dimension_count(), 6);
//!
//! let f = Function::random_seeded(g, 7);
//! let fhat = semiweyl::fourier_transform(&f, &cat).unwrap();
//! assert!((fhat.plancherel_sum() - f.norm_sqr()).abs() < 1e-12);
//! ```

pub mod catalog;
pub mod error;
pub mod functions;
pub mod groups;
pub mod hilbert;
pub mod io;
pub mod iwasawa;
pub mod linalg;
pub mod peter_weyl;
pub mod prime_parseval;
pub mod quadrature;
pub mod scalar;
pub mod semicomplete;

pub use catalog::{build_catalog, IrrepLabel, LabelPayload, RepCatalog, Truncation};
pub use error::{Error, Result};
pub use functions::{FunctionSpec, TestSet, TestSetSpec};
pub use groups::{make_group, GroupElement, GroupKind, GroupModel, GroupSpec};
pub use hilbert::{coefficients, expand, inner, parseval_defect, project, ExpansionWeights, L2Function, OrthonormalFamily};
pub use iwasawa::{check_k_semicomplete, lift_family, AxisSpec, IwasawaModel, LiftedFamily, ProfileSpec};
pub use linalg::Mat;
pub use peter_weyl::{fourier_transform, synthesize, FourierCoefficients};
pub use prime_parseval::{hs_inner, inverse_h, isometry_defect, membership, transform_h, MatrixSequence, MembershipVerdict, Verdict};
pub use scalar::{Real, C};
pub use semicomplete::{
    build_riemann_lebesgue_family, choose_omissions, omission_tail_bound, semi_fourier_expand, semicompleteness_defect,
    validate_weights, OmissionSpec, SemicompletenessReport, WeightDiagnostic,
};

pub type Group = GroupModel<f64>;
pub type Catalog = RepCatalog<f64>;
pub type Function = L2Function<f64>;
pub type Family = OrthonormalFamily<f64>;
pub type Weights = ExpansionWeights<f64>;
pub type Sequence = MatrixSequence<f64>;
pub type Coefficients = FourierCoefficients<f64>;
pub type Report = SemicompletenessReport<f64>;
pub type Iwasawa = IwasawaModel<f64>;
pub type Lifted = LiftedFamily<f64>;

pub type F32Group = GroupModel<f32>;
pub type F32Catalog = RepCatalog<f32>;
pub type F32Function = L2Function<f32>;
pub type F32Family = OrthonormalFamily<f32>;
pub type F32Weights = ExpansionWeights<f32>;
pub type F32Sequence = MatrixSequence<f32>;
