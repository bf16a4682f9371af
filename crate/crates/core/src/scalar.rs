//! Floating-point scalar abstraction shared by every module.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real scalar type the crate is generic over: `f32` or `f64`.
///
/// Tolerances throughout the crate are stated for double precision. With
/// `f32` the same code runs, but quadrature converges to the single-precision
/// roundoff floor and the tighter invariants cannot be met.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// `sin(x)/x` with its removable singularity at zero resolved by a
/// fourth-order Taylor expansion.
pub fn sinc<S: Scalar>(x: S) -> S {
    if x.abs() < S::lit(1e-4) {
        let x2 = x * x;
        S::one() - x2 / S::lit(6.0) + x2 * x2 / S::lit(120.0)
    } else {
        x.sin() / x
    }
}

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_angle<S: Scalar>(x: S) -> S {
    let tau = S::TAU();
    let mut y = x - tau * (x / tau).round();
    if y <= -S::PI() {
        y = y + tau;
    } else if y > S::PI() {
        y = y - tau;
    }
    y
}

/// If `x` is within `tol` of a positive integer, returns that integer.
pub fn nearest_positive_integer<S: Scalar>(x: S, tol: S) -> Option<u64> {
    let k = x.round();
    if k >= S::one() && (x - k).abs() <= tol {
        k.to_u64()
    } else {
        None
    }
}
