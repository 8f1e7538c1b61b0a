//! Irreducible unitary representations of a finite group, obtained by
//! splitting the left regular representation with a random Hermitian
//! operator from its commutant.
//!
//! `K = sum_g r_g R(g) + conj(r_g) R(g)^H`, with `R` the right regular
//! representation, commutes with the left regular representation `L`. On
//! each isotypic block `End(W) = W (x) W*` it acts as `I (x) M` for a generic
//! Hermitian `M`, so each eigenspace of `K` is an `L`-irreducible subspace.
//! Restricting `L` to an eigenspace basis gives a unitary irrep.

use nalgebra::DMatrix;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::linalg::{gram_schmidt, Mat};

type C64 = Complex<f64>;

const MAX_ATTEMPTS: u64 = 16;
const BASE_SEED: u64 = 0x5eed_1e55;

/// One irrep: its matrix at every group element (indexed like the group).
pub(crate) struct FiniteIrrep {
    pub matrices: Vec<Mat<f64>>,
    pub character: Vec<C64>,
}

impl FiniteIrrep {
    pub fn degree(&self) -> usize {
        self.matrices[0].rows()
    }
}

/// Complete list of pairwise inequivalent irreps, sorted by degree and then
/// by the phases of their characters in element order.
pub(crate) fn construct(group: &FiniteGroup) -> Result<Vec<FiniteIrrep>> {
    let mut last_err = None;
    for attempt in 0..MAX_ATTEMPTS {
        match try_construct(group, BASE_SEED.wrapping_add(attempt)) {
            Ok(irreps) => return Ok(irreps),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::IrrepConstruction("no attempts made".into())))
}

fn try_construct(group: &FiniteGroup, seed: u64) -> Result<Vec<FiniteIrrep>> {
    let n = group.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<C64> = (0..n)
        .map(|_| Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let mut k = DMatrix::<C64>::zeros(n, n);
    for a in 0..n {
        for (g, r) in coeffs.iter().enumerate() {
            k[(a, group.mul(a, g))] += *r;
            k[(a, group.mul(a, group.inv(g)))] += r.conj();
        }
    }
    let eig = k.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let spread = eig.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    let cluster_tol = 1e-7 * spread;

    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &idx in &order {
        match clusters.last_mut() {
            Some(c) if (eig.eigenvalues[idx] - eig.eigenvalues[*c.last().unwrap()]).abs() <= cluster_tol => c.push(idx),
            _ => clusters.push(vec![idx]),
        }
    }

    let mut irreps: Vec<FiniteIrrep> = Vec::new();
    for cluster in clusters {
        let vectors: Vec<Vec<C64>> =
            cluster.iter().map(|&c| (0..n).map(|r| eig.eigenvectors[(r, c)]).collect()).collect();
        let basis = gram_schmidt(vectors, 1e-8);
        if basis.len() != cluster.len() {
            return Err(Error::IrrepConstruction("eigenvector cluster lost rank".into()));
        }
        let dim = basis.len();
        let matrices: Vec<Mat<f64>> = (0..n)
            .map(|g| {
                // u(g)_{ij} = sum_h conj(Q[gh, i]) Q[h, j]
                Mat::from_fn(dim, dim, |i, j| {
                    (0..n).fold(Complex::new(0.0, 0.0), |acc, h| acc + basis[i][group.mul(g, h)].conj() * basis[j][h])
                })
            })
            .collect();
        if matrices.iter().any(|m| m.unitarity_residual() > 1e-9) {
            return Err(Error::IrrepConstruction("eigenspace is not invariant".into()));
        }
        let character: Vec<C64> = matrices.iter().map(|m| m.trace()).collect();
        let norm: f64 = character.iter().map(|c| c.norm_sqr()).sum::<f64>() / n as f64;
        if (norm - 1.0).abs() > 1e-8 {
            return Err(Error::IrrepConstruction(format!("eigenspace of dimension {dim} is reducible")));
        }
        let known = irreps
            .iter()
            .any(|ir| ir.character.iter().zip(&character).all(|(a, b)| (a - b).norm() < 1e-6));
        if !known {
            irreps.push(FiniteIrrep { matrices, character });
        }
    }

    let dim_sum: usize = irreps.iter().map(|ir| ir.degree() * ir.degree()).sum();
    if dim_sum != n {
        return Err(Error::IrrepConstruction(format!("sum of squared degrees {dim_sum} != group order {n}")));
    }
    irreps.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| sort_key(&a.character).cmp(&sort_key(&b.character))));
    Ok(irreps)
}

fn sort_key(character: &[C64]) -> Vec<(i64, i64)> {
    character
        .iter()
        .map(|c| {
            let re = (c.re * 1e9).round() / 1e9;
            let im = (c.im * 1e9).round() / 1e9;
            let modulus = (re * re + im * im).sqrt();
            let arg = if modulus < 1e-8 { 0.0 } else { im.atan2(re).rem_euclid(std::f64::consts::TAU) };
            ((arg * 1e6).round() as i64, (modulus * 1e6).round() as i64)
        })
        .collect()
}
