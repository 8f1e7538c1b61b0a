use num_complex::Complex;

use crate::scalar::{C, Real};

/// An element of SU(2) as the matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Su2Element<T> {
    pub m: [[C<T>; 2]; 2],
}

impl<T: Real> Su2Element<T> {
    pub fn identity() -> Self {
        let one = Complex::new(T::one(), T::zero());
        let zero = Complex::new(T::zero(), T::zero());
        Self { m: [[one, zero], [zero, one]] }
    }

    /// `Rz(alpha) Ry(beta) Rz(gamma)` with `Rz(t) = diag(e^{-it/2}, e^{it/2})`
    /// and `Ry(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]`.
    pub fn from_euler(alpha: T, beta: T, gamma: T) -> Self {
        let two = T::of(2.0);
        let (sb, cb) = (beta / two).sin_cos();
        let ea = Complex::from_polar(T::one(), -alpha / two);
        let eg = Complex::from_polar(T::one(), -gamma / two);
        let a = ea * eg * cb;
        let b = -(ea * eg.conj()) * sb;
        let c = ea.conj() * eg * sb;
        let d = ea.conj() * eg.conj() * cb;
        Self { m: [[a, b], [c, d]] }
    }

    /// Unit quaternion `(w, x, y, z)` mapped to `[[w - iz, -y - ix], [y - ix, w + iz]]`.
    pub fn from_quaternion(w: T, x: T, y: T, z: T) -> Self {
        let n = (w * w + x * x + y * y + z * z).sqrt();
        let (w, x, y, z) = (w / n, x / n, y / n, z / n);
        Self {
            m: [
                [Complex::new(w, -z), Complex::new(-y, -x)],
                [Complex::new(y, -x), Complex::new(w, z)],
            ],
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let a = &self.m;
        let b = &other.m;
        let mut m = [[Complex::new(T::zero(), T::zero()); 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self { m }
    }

    pub fn inverse(&self) -> Self {
        let a = &self.m;
        Self { m: [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]] }
    }

    pub fn det(&self) -> C<T> {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Max deviation from `U^H U = I` and `det U = 1`.
    pub fn residual(&self) -> T {
        let p = self.inverse().mul(self);
        let mut r = (self.det() - Complex::new(T::one(), T::zero())).norm();
        for i in 0..2 {
            for j in 0..2 {
                let target = if i == j { T::one() } else { T::zero() };
                r = r.max((p.m[i][j] - Complex::new(target, T::zero())).norm());
            }
        }
        r
    }
}
