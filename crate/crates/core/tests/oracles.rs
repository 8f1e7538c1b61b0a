//! Brute-force oracles for the constructions in the library. Each test
//! computes the expected value by an independent route and compares.

use std::f64::consts::TAU;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semiweyl::groups::Su2Element;
use semiweyl::peter_weyl::{block_project, coefficient_function};
use semiweyl::{
    build_riemann_lebesgue_family, choose_omissions, coefficients, fourier_transform, make_group, omission_tail_bound,
    synthesize, Catalog, Function, Group, GroupElement, IrrepLabel, Mat, OmissionSpec, Truncation,
};

type Cx = Complex<f64>;

fn group(spec: &str) -> Arc<Group> {
    Arc::new(make_group(spec).unwrap())
}

fn catalog(spec: &str, trunc: Truncation) -> Catalog {
    Catalog::build(group(spec), trunc).unwrap()
}

fn random_su2(rng: &mut ChaCha8Rng) -> Su2Element<f64> {
    let (a, b, c, d): (f64, f64, f64, f64) = (rng.random(), rng.random(), rng.random(), rng.random());
    let n = (a * a + b * b + c * c + d * d).sqrt();
    Su2Element::from_quaternion(a / n - 0.5, b / n, c / n, d / n)
}

#[test]
fn symmetric_three_multiplication_table_is_latin() {
    let g = group("sym:3");
    let fg = g.finite_group().unwrap();
    // composition recomputed from the permutations themselves
    for a in 0..6 {
        for b in 0..6 {
            let (pa, pb) = (fg.permutation(a), fg.permutation(b));
            let composed: Vec<u16> = (0..3).map(|x| pa[pb[x] as usize]).collect();
            assert_eq!(fg.permutation(fg.mul(a, b)), composed.as_slice());
        }
    }
    for a in 0..6 {
        let mut row: Vec<usize> = (0..6).map(|b| fg.mul(a, b)).collect();
        let mut col: Vec<usize> = (0..6).map(|b| fg.mul(b, a)).collect();
        row.sort_unstable();
        col.sort_unstable();
        assert_eq!(row, (0..6).collect::<Vec<_>>());
        assert_eq!(col, (0..6).collect::<Vec<_>>());
    }
}

#[test]
fn symmetric_three_characters_match_cycle_type_table() {
    let cat = catalog("sym:3", Truncation::Full);
    let g = cat.group().clone();
    let fg = g.finite_group().unwrap();
    // class by fixed points: 3 -> identity, 1 -> transposition, 0 -> 3-cycle
    let table = |fixed: usize| -> [f64; 3] {
        match fixed {
            3 => [1.0, 1.0, 2.0],
            1 => [1.0, -1.0, 0.0],
            _ => [1.0, 1.0, -1.0],
        }
    };
    let labels = cat.labels();
    assert_eq!(labels.iter().map(|l| l.degree).collect::<Vec<_>>(), [1, 1, 2]);
    for k in 0..6 {
        let fixed = fg.permutation(k).iter().enumerate().filter(|(i, p)| *i == **p as usize).count();
        let expected = table(fixed);
        for (l, want) in labels.iter().zip(expected) {
            let chi = cat.matrix(l, &GroupElement::Finite(k)).unwrap().trace();
            assert!((chi - Cx::new(want, 0.0)).norm() < 1e-12, "label {l} at {k}: {chi}");
        }
    }
}

#[test]
fn symmetric_three_gram_by_double_sum() {
    let cat = catalog("sym:3", Truncation::Full);
    let pw = cat.peter_weyl_basis().unwrap();
    assert_eq!(pw.len(), 6);
    for a in 0..6 {
        for b in 0..6 {
            let (x, y) = (pw.member_values(a), pw.member_values(b));
            let s: Cx = (0..6).map(|k| x[k] * y[k].conj()).sum::<Cx>() / 6.0;
            let want = if a == b { 1.0 } else { 0.0 };
            assert!((s - want).norm() < 1e-12);
        }
    }
    let two: Vec<IrrepLabel> = cat.labels().into_iter().filter(|l| l.degree == 2).collect();
    let rl = build_riemann_lebesgue_family(&cat, &OmissionSpec::new(two)).unwrap();
    assert_eq!(rl.len(), 2);
    assert!(rl.gram_residual() < 1e-12);
}

#[test]
fn coefficients_match_change_of_basis_solve() {
    let cat = catalog("sym:3", Truncation::Full);
    let pw = cat.peter_weyl_basis().unwrap();
    let f = Function::random_seeded(cat.group().clone(), 17);
    // f = sum_a c_a chi_a at every node; solve the 6x6 system directly
    let b = DMatrix::from_fn(6, 6, |k, a| pw.member_values(a)[k]);
    let rhs = DVector::from_column_slice(f.values());
    let c = b.lu().solve(&rhs).unwrap();
    let ours = coefficients(&f, &pw).unwrap();
    for a in 0..6 {
        assert!((c[a] - ours[a]).norm() < 1e-12);
    }
}

#[test]
fn cyclic_four_characters_from_regular_representation() {
    let n = 4;
    // left-regular action of the generator: e_k -> e_{k+1}
    let l = DMatrix::from_fn(n, n, |r, c| if r == (c + 1) % n { Cx::new(1.0, 0.0) } else { Cx::new(0.0, 0.0) });
    let h = (&l + l.adjoint()) + (&l - l.adjoint()) * Cx::new(0.0, 0.5);
    let eig = h.symmetric_eigen();
    let mut chars: Vec<Vec<Cx>> = (0..n)
        .map(|c| {
            let v = eig.eigenvectors.column(c);
            (0..n).map(|k| (v[k] / v[0]).conj()).collect()
        })
        .collect();
    chars.sort_by(|a, b| {
        let key = |x: &Vec<Cx>| ((x[1].arg() / (TAU / 4.0)).round() as i64).rem_euclid(4);
        key(a).cmp(&key(b))
    });
    let cat = catalog("zn:4", Truncation::Full);
    let sum_d2: usize = cat.labels().iter().map(|l| l.degree * l.degree).sum();
    assert_eq!(sum_d2, 4);
    for (m, (l, want)) in cat.labels().iter().zip(&chars).enumerate() {
        let grid = cat.coefficient_grid(l, 0, 0).unwrap();
        for k in 0..n {
            assert!((grid[k] - want[k]).norm() < 1e-12, "m {m} k {k}: {} vs {}", grid[k], want[k]);
            assert!((grid[k] - Cx::from_polar(1.0, TAU * (m * k) as f64 / 4.0)).norm() < 1e-12);
        }
    }
}

#[test]
fn spin_one_is_symmetric_square_of_defining() {
    let cat = catalog("su2:j=1,quad=8", Truncation::Full);
    let one = cat.parse_label("1").unwrap();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let z = Cx::new(0.0, 0.0);
    let o = Cx::new(1.0, 0.0);
    let s = Cx::new(r, 0.0);
    // columns: e1e1, (e1e2 + e2e1)/sqrt2, e2e2
    let p = Mat::from_vec(4, 3, vec![o, z, z, z, s, z, z, s, z, z, z, o]);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let g = random_su2(&mut rng);
        let u = Mat::from_vec(2, 2, vec![g.m[0][0], g.m[0][1], g.m[1][0], g.m[1][1]]);
        let sym = &(&p.adjoint() * &u.kron(&u)) * &p;
        let ours = cat.matrix(&one, &GroupElement::Su2(g)).unwrap();
        assert!(ours.max_abs_diff(&sym) < 1e-12);
    }
}

#[test]
fn su2_characters_follow_rotation_angle() {
    let cat = catalog("su2:j=5/2,quad=12", Truncation::Full);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..20 {
        let g = random_su2(&mut rng);
        let half = (g.m[0][0] + g.m[1][1]).re / 2.0;
        let theta = 2.0 * half.clamp(-1.0, 1.0).acos();
        for l in cat.labels() {
            let d = l.degree as f64;
            let want = ((d * theta / 2.0).sin()) / (theta / 2.0).sin();
            let got = cat.matrix(&l, &GroupElement::Su2(g)).unwrap().trace();
            assert!((got - want).norm() < 1e-9, "j {l}: {got} vs {want}");
        }
    }
}

#[test]
fn haar_measure_is_left_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for spec in ["zn:12", "dihedral:5", "sym:4", "circle:32"] {
        let g = group(spec);
        let phi: Vec<Cx> = (0..g.len()).map(|_| Cx::new(rng.random(), rng.random())).collect();
        let base = g.haar_integrate_values(&phi).unwrap();
        for h in g.nodes() {
            let shifted = g.haar_integrate(|x| {
                let hx = g.multiply(h, x).unwrap();
                let k = g.nodes().iter().position(|n| same_node(n, &hx)).expect("grid closed under node shifts");
                phi[k]
            });
            assert!((shifted - base).norm() < 1e-12, "{spec}");
        }
    }
    // SU(2): band-limited integrands under arbitrary left translation
    let cat = catalog("su2:j=2,quad=10", Truncation::Full);
    let g = cat.group().clone();
    for _ in 0..5 {
        let h = GroupElement::Su2(random_su2(&mut rng));
        for l in cat.labels() {
            let v = g.haar_integrate(|x| cat.matrix(&l, &g.multiply(&h, x).unwrap()).unwrap()[(0, 0)]);
            let want = if l.degree == 1 { 1.0 } else { 0.0 };
            assert!((v - want).norm() < 1e-10);
        }
    }
}

fn same_node(a: &GroupElement<f64>, b: &GroupElement<f64>) -> bool {
    match (a, b) {
        (GroupElement::Finite(x), GroupElement::Finite(y)) => x == y,
        (GroupElement::Circle(x), GroupElement::Circle(y)) => {
            let d = (x - y).rem_euclid(TAU);
            d < 1e-9 || TAU - d < 1e-9
        }
        _ => false,
    }
}

#[test]
fn su2_schur_orthogonality_by_direct_quadrature() {
    let cat = catalog("su2:j=3/2,quad=8", Truncation::Full);
    let g = cat.group().clone();
    let labels = cat.labels();
    for a in &labels {
        for b in &labels {
            for (i, j, k, l) in [(0, 0, 0, 0), (0, 1, 0, 1), (1, 0, 0, 1), (0, 0, 1, 1)] {
                if i >= a.degree || j >= a.degree || k >= b.degree || l >= b.degree {
                    continue;
                }
                let v = g.haar_integrate(|x| {
                    cat.matrix_coefficient(a, i, j, x).unwrap() * cat.matrix_coefficient(b, k, l, x).unwrap().conj()
                });
                let want = if a == b && i == k && j == l { 1.0 / a.degree as f64 } else { 0.0 };
                assert!((v - want).norm() < 1e-8, "{a} {b} ({i}{j}) ({k}{l}): {v}");
            }
        }
    }
}

#[test]
fn circle_band_limited_round_trip_and_plancherel() {
    let cat = catalog("circle:64", Truncation::MaxMagnitude(10.0));
    let g = cat.group().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let coeffs: Vec<(i64, Cx)> = (-10..=10).map(|m| (m, Cx::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))).collect();
    let f = Function::from_fn(g.clone(), |k| {
        let GroupElement::Circle(t) = g.nodes()[k] else { unreachable!() };
        coeffs.iter().map(|(m, c)| c * Cx::from_polar(1.0, *m as f64 * t)).sum()
    });
    let fhat = fourier_transform(&f, &cat).unwrap();
    for (m, c) in &coeffs {
        let got = fhat.get(&cat.parse_label(&m.to_string()).unwrap()).unwrap()[(0, 0)];
        assert!((got - c).norm() < 1e-12);
    }
    let plancherel: f64 = coeffs.iter().map(|(_, c)| c.norm_sqr()).sum();
    assert!((fhat.plancherel_sum() - plancherel).abs() < 1e-12);
    assert!((f.norm_sqr() - plancherel).abs() < 1e-12);
    assert!(synthesize(&fhat, &cat).unwrap().distance(&f).unwrap() < 1e-10);
}

#[test]
fn su2_band_limited_round_trip() {
    let cat = catalog("su2:j=2,quad=10", Truncation::Full);
    let g = cat.group().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut f = Function::zero(g.clone());
    for l in cat.labels() {
        for i in 0..l.degree {
            for j in 0..l.degree {
                let c = Cx::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
                f = f.axpy(c, &coefficient_function(&cat, &l, i, j).unwrap()).unwrap();
            }
        }
    }
    let fhat = fourier_transform(&f, &cat).unwrap();
    assert!((fhat.plancherel_sum() - f.norm_sqr()).abs() < 1e-8);
    assert!(synthesize(&fhat, &cat).unwrap().distance(&f).unwrap() < 1e-8);
}

#[test]
fn identity_indicator_transform_on_cyclic_four() {
    let cat = catalog("zn:4", Truncation::Full);
    let delta = Function::node_indicator(cat.group().clone(), 0).unwrap();
    // node_indicator has unit norm: sqrt(|G|) at the identity
    let f = delta.scale(Cx::new(0.5, 0.0));
    let fhat = fourier_transform(&f, &cat).unwrap();
    for (_, m) in &fhat.blocks {
        assert!((m[(0, 0)] - 0.25).norm() < 1e-15);
    }
}

#[test]
fn exhaustive_block_sum_reconstructs_on_sym3() {
    let cat = catalog("sym:3", Truncation::Full);
    let f = Function::random_seeded(cat.group().clone(), 10);
    let mut total = Function::zero(cat.group().clone());
    for l in cat.labels() {
        for i in 0..l.degree {
            total = (&total + &block_project(&f, &cat, &l, i).unwrap()).unwrap();
        }
    }
    assert!(total.distance(&f).unwrap() < 1e-12);
}

#[test]
fn tail_bound_single_label_is_brute_force_coefficient() {
    let cat = catalog("zn:12", Truncation::Full);
    let g = cat.group().clone();
    let f = Function::random_seeded(g.clone(), 11);
    let five = cat
        .labels()
        .into_iter()
        .find(|l| (cat.coefficient_grid(l, 0, 0).unwrap()[1] - Cx::from_polar(1.0, TAU * 5.0 / 12.0)).norm() < 1e-12)
        .unwrap();
    let direct: Cx = (0..12).map(|k| f.values()[k] * Cx::from_polar(1.0, -TAU * 5.0 * k as f64 / 12.0)).sum::<Cx>() / 12.0;
    let bound = omission_tail_bound(&f, &cat, &OmissionSpec::new([five])).unwrap();
    assert!((bound - direct.norm()).abs() < 1e-14);
}

#[test]
fn tail_bound_of_scaled_member_is_sqrt_degree() {
    for spec in ["sym:3", "sym:4", "dihedral:5"] {
        let cat = catalog(spec, Truncation::Full);
        let pw = cat.peter_weyl_basis().unwrap();
        for l in cat.labels().into_iter().skip(1) {
            let f = pw.block_member(&l.to_string(), 0, 0).unwrap();
            let bound = omission_tail_bound(&f, &cat, &OmissionSpec::new([l])).unwrap();
            assert!((bound - (l.degree as f64).sqrt()).abs() < 1e-12);
        }
    }
}

#[test]
fn geometric_circle_coefficients_choose_expected_omissions() {
    let cat = catalog("circle:64", Truncation::Full);
    let g = cat.group().clone();
    let f = Function::from_fn(g.clone(), |k| {
        let GroupElement::Circle(t) = g.nodes()[k] else { unreachable!() };
        (-31i64..=31).map(|m| Cx::from_polar(0.5f64.powi(m.abs() as i32), m as f64 * t)).sum()
    });
    let eps = 0.1;
    let chosen = choose_omissions(&cat, std::slice::from_ref(&f), eps).unwrap();

    // walk the catalog from the top with the analytic tails 2^-|m|
    let labels = cat.labels();
    let mut cumulative = 0.0;
    let mut expected = Vec::new();
    for l in labels.iter().skip(1).rev() {
        let t = 0.5f64.powf(l.magnitude());
        if cumulative + t < eps {
            cumulative += t;
            expected.push(*l);
        } else {
            break;
        }
    }
    let mut got: Vec<IrrepLabel> = chosen.labels().to_vec();
    got.sort_by_key(|l| l.to_string());
    expected.sort_by_key(|l| l.to_string());
    assert_eq!(got, expected);
    let names: Vec<String> = chosen.labels().iter().map(|l| l.to_string()).collect();
    assert!(names.contains(&"5".to_string()) && !names.contains(&"-5".to_string()));
    assert!(names.contains(&"-6".to_string()) && names.contains(&"31".to_string()));

    let bound = omission_tail_bound(&f, &cat, &chosen).unwrap();
    assert!((bound - cumulative).abs() < 1e-12 && bound < eps);
    let next = cat.parse_label("-5").unwrap();
    let mut bigger = chosen.labels().to_vec();
    bigger.push(next);
    assert!(omission_tail_bound(&f, &cat, &OmissionSpec::new(bigger)).unwrap() >= eps);
}

#[test]
fn band_limited_test_set_omits_everything_above_band() {
    let cat = catalog("circle:64", Truncation::MaxMagnitude(8.0));
    let g = cat.group().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let fs: Vec<Function> = (0..4)
        .map(|_| {
            let c: Vec<Cx> = (0..5).map(|_| Cx::new(rng.random(), rng.random())).collect();
            Function::from_fn(g.clone(), |k| {
                let GroupElement::Circle(t) = g.nodes()[k] else { unreachable!() };
                (-2i64..=2).map(|m| c[(m + 2) as usize] * Cx::from_polar(1.0, m as f64 * t)).sum()
            })
        })
        .collect();
    let chosen = choose_omissions(&cat, &fs, 1e-6).unwrap();
    let mut mags: Vec<f64> = chosen.labels().iter().map(|l| l.magnitude()).collect();
    mags.sort_by(f64::total_cmp);
    assert_eq!(mags, [3.0, 3.0, 4.0, 4.0, 5.0, 5.0, 6.0, 6.0, 7.0, 7.0, 8.0, 8.0]);
}

#[test]
fn su2_angle_conventions_agree_on_grid() {
    let g = group("su2:j=1,quad=6");
    for node in g.nodes() {
        let GroupElement::Su2(u) = node else { unreachable!() };
        assert!(u.residual() < 1e-12);
    }
    let w: f64 = g.weights().iter().sum();
    assert!((w - 1.0).abs() < 1e-14);
}
