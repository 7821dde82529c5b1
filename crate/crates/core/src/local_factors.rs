//! Local L-factors as polynomials in `X = p^{-s}`: spin and standard factors
//! from Satake parameters, integral factors from Hecke eigenvalues, and the
//! tensor product `det(1 - (A ⊗ B) X)` computed without roots.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::json;
use crate::poly::{inverse_roots, Matrix, Polynomial};
use crate::satake::{int_pow, EigenvalueRecord, SatakeParams};
use crate::scalar::{Real, Ring, ToComplex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Representation {
    Spin(usize),
    Standard(usize),
    /// Flattened tensor product of the listed factors.
    Tensor(Vec<Representation>),
}

impl Representation {
    pub fn tensor(a: &Self, b: &Self) -> Self {
        let mut parts = Vec::new();
        for r in [a, b] {
            match r {
                Self::Tensor(xs) => parts.extend(xs.iter().cloned()),
                other => parts.push(other.clone()),
            }
        }
        Self::Tensor(parts)
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Spin(n) => write!(f, "spin-{n}"),
            Self::Standard(n) => write!(f, "standard-{n}"),
            Self::Tensor(parts) => {
                let s: Vec<String> = parts.iter().map(ToString::to_string).collect();
                write!(f, "{}", s.join("*"))
            }
        }
    }
}

impl FromStr for Representation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.contains('*') {
            return s
                .split('*')
                .map(str::parse)
                .collect::<Result<Vec<_>>>()
                .map(Self::Tensor);
        }
        let bad = || Error::Domain(format!("unknown representation tag {s:?}"));
        let (kind, n) = s.rsplit_once('-').ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        match kind {
            "spin" => Ok(Self::Spin(n)),
            "standard" => Ok(Self::Standard(n)),
            _ => Err(bad()),
        }
    }
}

/// Local factor `1 + c_1 X + ... + c_d X^d` at one prime.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalFactor<R> {
    prime: u64,
    rep: Representation,
    poly: Polynomial<R>,
}

impl<R: Ring> LocalFactor<R> {
    pub fn new(prime: u64, rep: Representation, poly: Polynomial<R>) -> Result<Self> {
        if !poly.coeff(0).is_one() {
            return Err(Error::NotNormalized);
        }
        Ok(Self { prime, rep, poly })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn poly(&self) -> &Polynomial<R> {
        &self.poly
    }

    pub fn coeffs(&self) -> &[R] {
        self.poly.coeffs()
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    /// Same factor with coefficients pushed into the complex numbers.
    pub fn to_numeric<T: Real>(&self) -> LocalFactor<Complex<T>>
    where
        R: ToComplex<T>,
    {
        LocalFactor {
            prime: self.prime,
            rep: self.rep.clone(),
            poly: self.poly.map(|c| c.to_complex()),
        }
    }
}

/// `prod_{S ⊆ {1..n}} (1 - mu_0 prod_{i in S} mu_i X)`, degree `2^n`.
pub fn spin_local_factor<T: Real>(sp: &SatakeParams<T>) -> LocalFactor<Complex<T>> {
    LocalFactor {
        prime: sp.prime(),
        rep: Representation::Spin(sp.degree()),
        poly: Polynomial::from_inverse_roots(spin_inverse_roots(sp)),
    }
}

/// The `2^n` spin weights `mu_0 prod_{i in S} mu_i`, subsets in binary order.
pub fn spin_inverse_roots<T: Real>(sp: &SatakeParams<T>) -> Vec<Complex<T>> {
    let n = sp.degree();
    (0..1u32 << n)
        .map(|mask| {
            (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .fold(sp.mu0(), |acc, i| acc * sp.mu()[i])
        })
        .collect()
}

/// `(1 - X) prod_j (1 - mu_j X)(1 - mu_j^{-1} X)`, degree `2n + 1`.
pub fn standard_local_factor<T: Real>(sp: &SatakeParams<T>) -> LocalFactor<Complex<T>> {
    let one = Complex::new(T::one(), T::zero());
    let roots = std::iter::once(one).chain(sp.mu().iter().flat_map(|m| [*m, m.inv()]));
    LocalFactor {
        prime: sp.prime(),
        rep: Representation::Standard(sp.degree()),
        poly: Polynomial::from_inverse_roots(roots),
    }
}

/// `1 - a_p X + p^{k-1} X^2`.
pub fn gl2_factor_exact(k: u32, p: u64, a_p: &BigInt) -> LocalFactor<BigInt> {
    LocalFactor {
        prime: p,
        rep: Representation::Spin(1),
        poly: Polynomial::new(vec![BigInt::from(1), -a_p, int_pow(p, k - 1)]),
    }
}

/// Degree-2 spin factor from `T(p)` and `T(p^2)` eigenvalues:
/// `[1, -l1, l1^2 - l2 - p^{2k-4}, -l1 p^{2k-3}, p^{4k-6}]`.
pub fn gsp4_spin_factor_exact(
    k: u32,
    p: u64,
    lambda_p: &BigInt,
    lambda_p2: &BigInt,
) -> Result<LocalFactor<BigInt>> {
    if k < 2 {
        return Err(Error::InvalidWeight(format!("degree-2 weight {k} too small")));
    }
    let coeffs = vec![
        BigInt::from(1),
        -lambda_p,
        lambda_p * lambda_p - lambda_p2 - int_pow(p, 2 * k - 4),
        -lambda_p * int_pow(p, 2 * k - 3),
        int_pow(p, 4 * k - 6),
    ];
    Ok(LocalFactor { prime: p, rep: Representation::Spin(2), poly: Polynomial::new(coeffs) })
}

/// Integral spin factor of a degree-1 or degree-2 eigenvalue record at `p`.
pub fn record_spin_factor_exact(rec: &EigenvalueRecord, p: u64) -> Result<LocalFactor<BigInt>> {
    match rec.degree {
        1 => Ok(gl2_factor_exact(rec.weight, p, rec.lambda_p(p)?)),
        2 => gsp4_spin_factor_exact(rec.weight, p, rec.lambda_p(p)?, rec.lambda_p2(p)?),
        d => Err(Error::UnsupportedDegree(d)),
    }
}

/// `det(1 - (C_A ⊗ C_B) X)` for the companion matrices of both factors.
/// Works over any coefficient ring; over the integers the result is exact.
pub fn tensor_local_factor<R: Ring>(a: &LocalFactor<R>, b: &LocalFactor<R>) -> Result<LocalFactor<R>> {
    if a.prime != b.prime {
        return Err(Error::PrimeMismatch(a.prime, b.prime));
    }
    if !a.poly.coeff(0).is_one() || !b.poly.coeff(0).is_one() {
        return Err(Error::NotNormalized);
    }
    let m = Matrix::companion(&a.poly).kronecker(&Matrix::companion(&b.poly));
    Ok(LocalFactor {
        prime: a.prime,
        rep: Representation::tensor(&a.rep, &b.rep),
        poly: m.det_one_minus_x(),
    })
}

/// Reciprocal local value `1 / f(p^{-s})`.
///
/// Each term `c_i p^{-is}` is formed with its size folded into one
/// exponential, so integral factors far beyond the floating-point range still
/// evaluate wherever the value itself is representable.
pub fn evaluate<T, R>(f: &LocalFactor<R>, s: Complex<T>) -> Result<Complex<T>>
where
    T: Real,
    R: Ring + ToComplex<T>,
{
    let ln_p = T::of(f.prime as f64).ln();
    let mut value = Complex::new(T::zero(), T::zero());
    let mut scale = T::zero();
    for (i, c) in f.coeffs().iter().enumerate() {
        let i = T::of(i as f64);
        let term = c.to_complex_scaled(i * s.re * ln_p);
        let phase = Complex::new(T::zero(), -i * s.im * ln_p).exp();
        value = value + term * phase;
        scale = scale + term.norm();
    }
    if value.norm() <= T::epsilon() * T::of(64.0) * scale {
        return Err(Error::Pole);
    }
    Ok(value.inv())
}

/// Coefficients of `f(p^{-theta} X)`: the inverse roots divided by
/// `p^theta`, computed without overflow.
pub fn rescaled<T, R>(f: &LocalFactor<R>, theta: T) -> Polynomial<Complex<T>>
where
    T: Real,
    R: Ring + ToComplex<T>,
{
    let ln_p = T::of(f.prime as f64).ln();
    Polynomial::new(
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c.to_complex_scaled(T::of(i as f64) * theta * ln_p))
            .collect(),
    )
}

/// Coefficientwise comparison with the error model of floating-point
/// expansion: `|a_i - b_i| <= tol * max(|a_i|, |b_i|, e_i)`, where `e_i` is
/// the `i`-th elementary symmetric function of the inverse-root moduli of `a`
/// (the natural size of `c_i`).
pub fn factors_close<T: Real>(a: &LocalFactor<Complex<T>>, b: &LocalFactor<Complex<T>>, tol: T) -> bool {
    if a.prime != b.prime || a.degree() != b.degree() {
        return false;
    }
    let moduli = inverse_roots(&a.poly).into_iter().map(|r| Complex::new(r.norm(), T::zero()));
    let scale = Polynomial::from_inverse_roots(moduli);
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .enumerate()
        .all(|(i, (x, y))| {
            let floor = scale.coeff(i).norm();
            crate::scalar::close(*x, *y, tol, floor)
        })
}

#[derive(Serialize, Deserialize)]
struct ExactWire {
    p: u64,
    degree: usize,
    rep: String,
    #[serde(with = "json::decimal_vec")]
    coeffs: Vec<BigInt>,
}

impl Serialize for LocalFactor<BigInt> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExactWire {
            p: self.prime,
            degree: self.degree(),
            rep: self.rep.to_string(),
            coeffs: self.coeffs().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LocalFactor<BigInt> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = ExactWire::deserialize(d)?;
        if w.coeffs.len() != w.degree + 1 {
            return Err(D::Error::custom("degree does not match coefficient count"));
        }
        let rep = w.rep.parse().map_err(D::Error::custom)?;
        LocalFactor::new(w.p, rep, Polynomial::new(w.coeffs)).map_err(D::Error::custom)
    }
}

#[derive(Serialize)]
struct NumericWire {
    p: u64,
    degree: usize,
    rep: String,
    coeffs: Vec<[f64; 2]>,
}

impl Serialize for LocalFactor<Complex<f64>> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        NumericWire {
            p: self.prime,
            degree: self.degree(),
            rep: self.rep.to_string(),
            coeffs: self.coeffs().iter().map(|c| [c.re, c.im]).collect(),
        }
        .serialize(s)
    }
}
