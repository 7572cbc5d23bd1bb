//! Scalar abstraction. Everything numeric in the crate is generic over a real
//! floating type `T: Real` (f32 or f64); matrix entries are `Complex<T>`.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating point scalar: f32 or f64.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Never fails for the supported types.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex scalar over `T`.
pub type C<T> = Complex<T>;

pub(crate) fn cplx<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

pub(crate) fn real<T: Real>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}

/// Unit-modulus phase `z / |z|`. Caller guarantees `z != 0`.
pub(crate) fn phase<T: Real>(z: C<T>) -> C<T> {
    z / real(z.norm())
}
