//! Spin-j representations of SU(2) built as symmetric powers of the defining
//! representation, evaluated directly from the matrix entries.


use crate::groups::Su2Element;
use crate::linalg::Mat;
use crate::scalar::{cz, Real};

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `D^j(U)` in the basis `m = j, j-1, ..., -j` (row/column `i` is `m = j - i`).
///
/// Column `m'` is the image of the normalized monomial
/// `x^{j+m'} y^{j-m'} / sqrt((j+m')!(j-m')!)` under `x -> a x + c y`,
/// `y -> b x + d y`. For `j = 1/2` this is `U` itself.
pub fn spin_matrix<T: Real>(twice_j: u32, u: &Su2Element<T>) -> Mat<T> {
    let two_j = twice_j;
    let dim = two_j as usize + 1;
    let [[a, b], [c, d]] = u.m;
    let mut out = Mat::zeros(dim, dim);
    for col in 0..=two_j {
        let p = two_j - col;
        let q = col;
        let col_norm = (factorial(p) * factorial(q)).sqrt();
        for row in 0..=two_j {
            // coefficient of x^{2j-row} y^{row}
            let x_pow = two_j - row;
            let mut acc = cz::<T>();
            let k_lo = x_pow.saturating_sub(q);
            let k_hi = x_pow.min(p);
            for k in k_lo..=k_hi {
                let l = x_pow - k;
                let coef = T::of(binomial(p, k) * binomial(q, l));
                let term = a.powi(k as i32) * c.powi((p - k) as i32) * b.powi(l as i32) * d.powi((q - l) as i32);
                acc = acc + term * coef;
            }
            let row_norm = (factorial(x_pow) * factorial(row)).sqrt();
            out[(row as usize, col as usize)] = acc * T::of(row_norm / col_norm);
        }
    }
    out
}

/// Explicit small-d sum in Euler angles; used only as a cross-check.
#[cfg(test)]
pub(crate) fn wigner_d_euler(twice_j: u32, alpha: f64, beta: f64, gamma: f64) -> Mat<f64> {
    let dim = twice_j as usize + 1;
    let j = twice_j as f64 / 2.0;
    let (s, c) = (beta / 2.0).sin_cos();
    Mat::from_fn(dim, dim, |row, col| {
        let m = j - row as f64;
        let mp = j - col as f64;
        let jm = (j + m).round() as i64;
        let jmm = (j - m).round() as i64;
        let jmp = (j + mp).round() as i64;
        let jmpm = (j - mp).round() as i64;
        let pref = (factorial(jm as u32) * factorial(jmm as u32) * factorial(jmp as u32) * factorial(jmpm as u32)).sqrt();
        let mut d = 0.0;
        // d^j_{m m'}(beta) = sum_s (-1)^{m-m'+s} pref / ((j+m'-s)! s! (m-m'+s)! (j-m-s)!)
        //                   cos^{2j+m'-m-2s} sin^{m-m'+2s}
        let dm = (m - mp).round() as i64;
        for s_ in 0..=(2 * twice_j as i64) {
            let a1 = jmp - s_;
            let a3 = dm + s_;
            let a4 = jmm - s_;
            if a1 < 0 || a3 < 0 || a4 < 0 {
                continue;
            }
            let sign = if (dm + s_).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            let den = factorial(a1 as u32) * factorial(s_ as u32) * factorial(a3 as u32) * factorial(a4 as u32);
            let cp = (twice_j as i64 - dm - 2 * s_) as i32;
            let sp = (dm + 2 * s_) as i32;
            d += sign * pref / den * c.powi(cp) * s.powi(sp);
        }
        num_complex::Complex::from_polar(1.0, -m * alpha) * d * num_complex::Complex::from_polar(1.0, -mp * gamma)
    })
}
