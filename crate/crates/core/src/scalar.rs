//! Scalar abstractions shared by the exact and numeric code paths.
//!
//! Numeric Satake data is generic over a real type `T: Real` (`f32` or `f64`)
//! and lives in `Complex<T>`. Polynomial and matrix algebra is generic over a
//! commutative [`Ring`], which covers `BigInt`, `BigRational` and `Complex<T>`
//! alike, so one implementation serves both the certified integer path and the
//! floating-point cross-checks.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, One, ToPrimitive, Zero};

/// floating point: f32 or f64
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 is representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Commutative ring with identity; all polynomial and determinant code is
/// written against this.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
}

impl<R> Ring for R where
    R: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = R>
        + Sub<Output = R>
        + Mul<Output = R>
        + Neg<Output = R>
        + Send
        + Sync
{
}

/// Lossy embedding of a coefficient ring into the complex numbers.
pub trait ToComplex<T: Real> {
    fn to_complex(&self) -> Complex<T>;

    /// `self * e^{-log_scale}`, for values whose unscaled size would
    /// overflow `T`.
    fn to_complex_scaled(&self, log_scale: T) -> Complex<T> {
        self.to_complex() * (-log_scale).exp()
    }
}

impl<T: Real> ToComplex<T> for Complex<T> {
    fn to_complex(&self) -> Complex<T> {
        *self
    }
}

impl<T: Real> ToComplex<T> for BigInt {
    fn to_complex(&self) -> Complex<T> {
        Complex::new(bigint_to_real(self), T::zero())
    }

    fn to_complex_scaled(&self, log_scale: T) -> Complex<T> {
        // keep the top 64 bits as the mantissa and fold the rest into the scale
        let shift = self.bits().saturating_sub(64);
        let top: BigInt = self >> shift;
        let m = T::of(top.to_f64().unwrap_or(f64::NAN));
        let e = T::of(shift as f64) * T::LN_2() - log_scale;
        Complex::new(m * e.exp(), T::zero())
    }
}

impl<T: Real> ToComplex<T> for BigRational {
    fn to_complex(&self) -> Complex<T> {
        let v = self.to_f64().unwrap_or(f64::NAN);
        Complex::new(T::of(v), T::zero())
    }
}

impl<T: Real> ToComplex<T> for i64 {
    fn to_complex(&self) -> Complex<T> {
        Complex::new(T::of(*self as f64), T::zero())
    }
}

pub fn bigint_to_real<T: Real>(x: &BigInt) -> T {
    // to_f64 saturates to +-inf beyond the f64 range
    T::of(x.to_f64().unwrap_or(f64::NAN))
}

/// `p^e` as a real number, for possibly negative `e`.
pub fn real_pow<T: Real>(p: u64, e: i64) -> T {
    T::of(p as f64).powi(e as i32)
}

/// `log_p |z|`.
pub fn log_modulus<T: Real>(z: Complex<T>, p: u64) -> T {
    z.norm().ln() / T::of(p as f64).ln()
}

/// Relative closeness `|a - b| <= tol * max(|a|, |b|, floor)`.
pub fn close<T: Real>(a: Complex<T>, b: Complex<T>, tol: T, floor: T) -> bool {
    let scale = a.norm().max(b.norm()).max(floor);
    (a - b).norm() <= tol * scale
}
