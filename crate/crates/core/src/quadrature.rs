//! Gauss-Legendre nodes and weights.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Gauss-Legendre rule of `order` nodes on `[-1, 1]`, nodes ascending.
/// Weights sum to 2. Exact for polynomials of degree `2 * order - 1`.
pub fn gauss_legendre<T: Real>(order: usize) -> Result<(Vec<T>, Vec<T>)> {
    if order == 0 {
        return Err(Error::QuadratureTooSmall("Gauss-Legendre order must be at least 1".into()));
    }
    // Newton iteration on P_n, run in f64 and cast afterwards.
    let n = order;
    let mut nodes = vec![0.0f64; n];
    let mut weights = vec![0.0f64; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok((nodes.into_iter().map(T::of).collect(), weights.into_iter().map(T::of).collect()))
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss-Legendre rule mapped onto `[lo, hi]`; weights sum to `hi - lo`.
pub fn gauss_legendre_on<T: Real>(order: usize, lo: T, hi: T) -> Result<(Vec<T>, Vec<T>)> {
    let (x, w) = gauss_legendre::<T>(order)?;
    let two = T::of(2.0);
    let half = (hi - lo) / two;
    let mid = (hi + lo) / two;
    Ok((x.into_iter().map(|t| mid + half * t).collect(), w.into_iter().map(|t| t * half).collect()))
}
