//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// A real floating-point scalar (`f32` or `f64`) together with the
/// tolerances that are meaningful at its precision.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Default + Debug + Display + Send + Sync + 'static
{
    /// Gram / orthogonality tolerance on finite groups, where the Haar
    /// integral is an exact finite sum.
    const FINITE_TOL: f64;
    /// Gram / orthogonality tolerance on quadrature-backed groups.
    const CONTINUOUS_TOL: f64;

    /// Lossy conversion from `f64`.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 is representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {
    const FINITE_TOL: f64 = 1e-5;
    const CONTINUOUS_TOL: f64 = 1e-4;
}

impl Real for f64 {
    const FINITE_TOL: f64 = 1e-12;
    const CONTINUOUS_TOL: f64 = 1e-8;
}

pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn cz<T: Real>() -> C<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub(crate) fn c1<T: Real>() -> C<T> {
    Complex::new(T::one(), T::zero())
}

/// Casts a complex value between scalar types.
#[inline]
pub fn cast_complex<S: Real, T: Real>(z: C<S>) -> C<T> {
    Complex::new(T::of(z.re.to_f64_lossy()), T::of(z.im.to_f64_lossy()))
}
