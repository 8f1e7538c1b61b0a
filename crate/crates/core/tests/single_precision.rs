use std::sync::Arc;

use semiweyl::{
    build_riemann_lebesgue_family, fourier_transform, make_group, parseval_defect, synthesize, F32Catalog, F32Function,
    OmissionSpec, Real, Truncation,
};

#[test]
fn f32_pipeline_meets_single_precision_tolerances() {
    for (spec, trunc) in [
        ("sym:3", Truncation::Full),
        ("dihedral:5", Truncation::Full),
        ("circle:32", Truncation::MaxMagnitude(5.0)),
        ("su2:j=1,quad=6", Truncation::Full),
    ] {
        let g = Arc::new(make_group::<f32>(spec).unwrap());
        let cat = F32Catalog::build(g.clone(), trunc).unwrap();
        let tol = if g.is_finite() { f32::FINITE_TOL } else { f32::CONTINUOUS_TOL } as f32;
        let pw = cat.peter_weyl_basis().unwrap();
        assert!(pw.gram_residual() <= tol, "{spec}: {}", pw.gram_residual());

        let f = F32Function::random_seeded(g.clone(), 1);
        let back = synthesize(&fourier_transform(&f, &cat).unwrap(), &cat).unwrap();
        if g.is_finite() {
            assert!(parseval_defect(&f, &pw).unwrap().abs() <= tol);
            assert!(back.distance(&f).unwrap() <= tol);
        }
        let omit = OmissionSpec::new(cat.labels().into_iter().skip(1).take(1));
        let rl = build_riemann_lebesgue_family(&cat, &omit).unwrap();
        assert!(parseval_defect(&f, &rl).unwrap() >= -tol);
    }
}
