//! Real scalar abstraction shared by every routine in the crate.
//!
//! Tensor entries are `Complex<T>` where `T` is one of the IEEE floating
//! point types. All tolerances are expressed in terms of `T::epsilon()` so
//! that the same code runs in single and double precision.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Complex scalar with real part type `T`.
pub type C<T> = Complex<T>;

/// Floating point type usable as the real part of tensor entries.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal, saturating to infinity if out of range.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).unwrap_or_else(|| if x > 0.0 { Self::infinity() } else { Self::neg_infinity() })
    }

    /// Lossy conversion to `f64` for reporting.
    fn to_f64_lossy(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }

    /// Relative tolerance for structural predicates (Hermitian, zero,
    /// orthonormal): `1e-10` in double precision, widened to a few
    /// thousand ulps in single precision.
    fn structural_tol() -> Self {
        Self::lit(1e-10).max(Self::epsilon() * Self::lit(2048.0))
    }
}

impl Real for f32 {}
impl Real for f64 {}

pub(crate) fn czero<T: Real>() -> C<T> {
    Complex::new(T::zero(), T::zero())
}

pub(crate) fn cone<T: Real>() -> C<T> {
    Complex::new(T::one(), T::zero())
}

pub(crate) fn creal<T: Real>(x: T) -> C<T> {
    Complex::new(x, T::zero())
}

/// `e^{iθ}`.
pub(crate) fn cis<T: Real>(theta: T) -> C<T> {
    Complex::new(theta.cos(), theta.sin())
}

pub(crate) fn is_finite<T: Real>(z: C<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
