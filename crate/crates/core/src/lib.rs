//! Satake parameters, local factors and the degree-3 spinor lift of a
//! `GL(2) × GSp(4)` pair of eigenforms.
//!
//! Numeric code is generic over the real type (`f32`, `f64`) through
//! [`scalar::Real`]; polynomial and determinant code is generic over any
//! commutative [`scalar::Ring`], which is how the exact big-integer checks and
//! the floating-point ones share one implementation. The aliases below fix
//! the common choices.

pub mod analytic;
pub mod cuspidality;
pub mod error;
pub mod fixtures;
pub mod hodge;
mod json;
pub mod lifting;
pub mod local_factors;
pub mod poly;
pub mod primes;
pub mod satake;
pub mod scalar;

use num_bigint::BigInt;
use num_complex::Complex64;

pub use error::{Error, Result};
pub use local_factors::{LocalFactor, Representation};
pub use satake::{EigenvalueEntry, EigenvalueRecord, SatakeParams, WeylElement};

/// Double-precision Satake parameters.
pub type Satake = SatakeParams<f64>;
/// Single-precision Satake parameters.
pub type Satake32 = SatakeParams<f32>;
/// Local factor with integer coefficients.
pub type ExactFactor = LocalFactor<BigInt>;
/// Local factor with double-precision complex coefficients.
pub type NumericFactor = LocalFactor<Complex64>;
/// Integral `q`-expansion.
pub type IntSeries = fixtures::QSeries<BigInt>;
pub type Lift = lifting::LiftInput<f64>;
pub type Model = cuspidality::EisensteinModel<f64>;
