//! Satake parameters on the maximal torus of `GSp(2n)`, the Weyl group action
//! on them, and the dictionary between parameters and Hecke eigenvalues.

use itertools::Itertools;
use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json;
use crate::local_factors::gsp4_spin_factor_exact;
use crate::poly::inverse_roots;
use crate::primes::is_prime;
use crate::scalar::{bigint_to_real, log_modulus, real_pow, Real, ToComplex};

/// `(mu_0; mu_1, ..., mu_n)` at one prime, together with the degree `n`, the
/// weight `k` and the prime `p` it belongs to.
///
/// Construction only checks well-formedness (degree, arity, nonzero entries).
/// The similitude normalization `mu_0^2 mu_1 ... mu_n = p^{nk - n(n+1)/2}` is
/// a separate check so that unnormalized test data stays representable.
#[derive(Clone, Debug, PartialEq)]
pub struct SatakeParams<T> {
    degree: usize,
    weight: u32,
    prime: u64,
    mu0: Complex<T>,
    mu: Vec<Complex<T>>,
}

impl<T: Real> SatakeParams<T> {
    pub fn new(
        degree: usize,
        weight: u32,
        prime: u64,
        mu0: Complex<T>,
        mu: Vec<Complex<T>>,
    ) -> Result<Self> {
        if !(1..=3).contains(&degree) {
            return Err(Error::UnsupportedDegree(degree));
        }
        if mu.len() != degree {
            return Err(Error::ParameterCount { expected: degree, got: mu.len() });
        }
        if weight == 0 {
            return Err(Error::InvalidWeight("weight must be positive".into()));
        }
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        for (i, z) in std::iter::once(&mu0).chain(&mu).enumerate() {
            if z.norm() == T::zero() || !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::DegenerateParameter { index: i });
            }
        }
        Ok(Self { degree, weight, prime, mu0, mu })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn mu0(&self) -> Complex<T> {
        self.mu0
    }

    pub fn mu(&self) -> &[Complex<T>] {
        &self.mu
    }

    /// `nk - n(n+1)/2`
    pub fn normalization_exponent(&self) -> i64 {
        let (n, k) = (self.degree as i64, self.weight as i64);
        n * k - n * (n + 1) / 2
    }

    pub fn check_normalization(&self, tol: T) -> bool {
        let target: T = real_pow(self.prime, self.normalization_exponent());
        let prod = self.mu.iter().fold(self.mu0 * self.mu0, |acc, m| acc * m);
        (prod - Complex::new(target, T::zero())).norm() <= tol * target
    }

    /// `lambda_p = mu_0 prod_i (1 + mu_i)`, the trace of the spin
    /// representation on the parameter.
    pub fn hecke_eigenvalue(&self) -> Complex<T> {
        let one = Complex::new(T::one(), T::zero());
        self.mu.iter().fold(self.mu0, |acc, m| acc * (one + m))
    }

    /// Ramanujan-Petersson at this prime: every `|mu_i|` is within `tol` of 1.
    pub fn ramanujan_check(&self, tol: T) -> bool {
        self.mu.iter().all(|m| (m.norm() - T::one()).abs() <= tol)
    }

    pub fn weyl_apply(&self, w: &WeylElement) -> Result<Self> {
        w.apply(self)
    }

    /// All `2^n n!` images under the Weyl group, duplicates kept, in the
    /// order of [`WeylElement::all`].
    pub fn weyl_orbit(&self) -> Vec<Self> {
        WeylElement::all(self.degree)
            .iter()
            .map(|w| w.apply(self).expect("degrees agree"))
            .collect()
    }

    /// `log_p |mu_i|` for `i = 1..=n`.
    pub fn log_moduli(&self) -> Vec<T> {
        self.mu.iter().map(|m| log_modulus(*m, self.prime)).collect()
    }
}

/// Element of the hyperoctahedral group `S_n ⋉ (Z/2)^n`: a permutation of
/// the indices followed by inversion of the parameters in `flips`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Vec<usize>,
    flips: Vec<bool>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        Self { perm: (0..n).collect(), flips: vec![false; n] }
    }

    /// `perm[i]` is the (0-based) source index of slot `i`.
    pub fn new(perm: Vec<usize>, flips: Vec<bool>) -> Result<Self> {
        let n = perm.len();
        if flips.len() != n {
            return Err(Error::ParameterCount { expected: n, got: flips.len() });
        }
        let mut seen = vec![false; n];
        for &i in &perm {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Domain(format!("{perm:?} is not a permutation")));
            }
        }
        Ok(Self { perm, flips })
    }

    /// Sign flip of the single (0-based) index `i`.
    pub fn flip(n: usize, i: usize) -> Self {
        let mut w = Self::identity(n);
        w.flips[i] = true;
        w
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn flips(&self) -> &[bool] {
        &self.flips
    }

    pub fn is_identity(&self) -> bool {
        self == &Self::identity(self.rank())
    }

    /// Every group element: permutations in lexicographic order, each with
    /// all `2^n` flip subsets.
    pub fn all(n: usize) -> Vec<Self> {
        (0..n)
            .permutations(n)
            .flat_map(|perm| {
                (0..1u32 << n).map(move |mask| Self {
                    perm: perm.clone(),
                    flips: (0..n).map(|i| mask >> i & 1 == 1).collect(),
                })
            })
            .collect()
    }

    /// `self ∘ other`: acting by the result equals acting by `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "Weyl elements of different rank");
        let perm = self.perm.iter().map(|&i| other.perm[i]).collect();
        let flips = self
            .perm
            .iter()
            .zip(&self.flips)
            .map(|(&i, &f)| f ^ other.flips[i])
            .collect();
        Self { perm, flips }
    }

    pub fn inverse(&self) -> Self {
        let n = self.rank();
        let mut perm = vec![0; n];
        let mut flips = vec![false; n];
        for (i, &src) in self.perm.iter().enumerate() {
            perm[src] = i;
            flips[src] = self.flips[i];
        }
        Self { perm, flips }
    }

    /// Permute, then for each flipped slot replace `mu_i` by `mu_i^{-1}` and
    /// multiply `mu_0` by the pre-flip `mu_i`.
    pub fn apply<T: Real>(&self, sp: &SatakeParams<T>) -> Result<SatakeParams<T>> {
        if self.rank() != sp.degree {
            return Err(Error::DegreeMismatch(self.rank(), sp.degree));
        }
        let mut mu0 = sp.mu0;
        let mu = self
            .perm
            .iter()
            .zip(&self.flips)
            .map(|(&src, &flip)| {
                let m = sp.mu[src];
                if flip {
                    mu0 = mu0 * m;
                    m.inv()
                } else {
                    m
                }
            })
            .collect();
        Ok(SatakeParams { mu0, mu, ..sp.clone() })
    }
}

/// Roots of `X^2 - a X + c`, ordered so that the first has the larger
/// `|a + sqrt|` branch (principal square root when that is a tie).
fn quadratic_roots<T: Real>(a: T, c: T) -> (Complex<T>, Complex<T>) {
    let disc = Complex::new(a * a - T::of(4.0) * c, T::zero());
    let s = disc.sqrt();
    let a = Complex::new(a, T::zero());
    let plus = a + s;
    let minus = a - s;
    let big = if plus.norm() >= minus.norm() { plus } else { minus };
    let r1 = big / T::of(2.0);
    if r1.norm() == T::zero() {
        return (r1, r1);
    }
    (r1, Complex::new(c, T::zero()) / r1)
}

/// Degree-1 parameters from a `GL(2)` eigenvalue: `alpha_0` and
/// `alpha_0 alpha_1` are the roots of `X^2 - a_p X + p^{k-1}`.
///
/// In the tempered case the root with positive imaginary part becomes
/// `alpha_0`; for `a_p = 0` that is `i p^{(k-1)/2}`.
pub fn satake_from_gl2<T: Real>(k: u32, p: u64, a_p: &BigInt) -> Result<SatakeParams<T>> {
    if k == 0 {
        return Err(Error::InvalidWeight("weight must be positive".into()));
    }
    let c: T = real_pow(p, k as i64 - 1);
    let (r1, r2) = quadratic_roots(bigint_to_real::<T>(a_p), c);
    SatakeParams::new(1, k, p, r1, vec![r2 / r1])
}

/// Degree-2 parameters from `(lambda_p, lambda_{p^2})`, by solving the spin
/// quartic numerically and pairing its inverse roots `{b0, b0 b1, b0 b2,
/// b0 b1 b2}` through `b0 * (b0 b1 b2) = p^{2k-3}`. The largest root becomes
/// `beta_0`.
pub fn satake_from_gsp4<T: Real>(
    k: u32,
    p: u64,
    lambda_p: &BigInt,
    lambda_p2: &BigInt,
) -> Result<SatakeParams<T>> {
    if k < 2 {
        return Err(Error::InvalidWeight(format!("degree-2 weight {k} too small")));
    }
    let f = gsp4_spin_factor_exact(k, p, lambda_p, lambda_p2)?;
    let mut roots = inverse_roots(&f.poly().map(|c| ToComplex::<T>::to_complex(c)));
    roots.sort_by(|a, b| b.norm().partial_cmp(&a.norm()).expect("finite roots"));
    let b0 = roots.remove(0);
    let target: T = real_pow(p, 2 * k as i64 - 3);
    let partner = Complex::new(target, T::zero()) / b0;
    let (idx, _) = roots
        .iter()
        .enumerate()
        .map(|(i, r)| (i, (r - partner).norm()))
        .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite"))
        .expect("three roots remain");
    roots.remove(idx);
    roots.sort_by(|a, b| b.im.partial_cmp(&a.im).expect("finite"));
    SatakeParams::new(2, k, p, b0, vec![roots[0] / b0, roots[1] / b0])
}

/// One prime's entry of an [`EigenvalueRecord`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenvalueEntry {
    pub p: u64,
    #[serde(with = "json::decimal")]
    pub lambda_p: BigInt,
    #[serde(
        with = "json::decimal_opt",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub lambda_p2: Option<BigInt>,
}

/// Hecke eigenvalues of one eigenform at a list of primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawRecord")]
pub struct EigenvalueRecord {
    pub label: String,
    pub degree: usize,
    pub weight: u32,
    pub eigenvalues: Vec<EigenvalueEntry>,
}

#[derive(Deserialize)]
struct RawRecord {
    label: String,
    degree: usize,
    weight: u32,
    eigenvalues: Vec<EigenvalueEntry>,
}

impl TryFrom<RawRecord> for EigenvalueRecord {
    type Error = Error;

    fn try_from(r: RawRecord) -> Result<Self> {
        Self::new(r.label, r.degree, r.weight, r.eigenvalues)
    }
}

impl EigenvalueRecord {
    pub fn new(
        label: impl Into<String>,
        degree: usize,
        weight: u32,
        eigenvalues: Vec<EigenvalueEntry>,
    ) -> Result<Self> {
        let label = label.into();
        if !(1..=3).contains(&degree) {
            return Err(Error::UnsupportedDegree(degree));
        }
        if eigenvalues.windows(2).any(|w| w[0].p >= w[1].p) {
            return Err(Error::UnorderedPrimes(label));
        }
        Ok(Self { label, degree, weight, eigenvalues })
    }

    pub fn entry(&self, p: u64) -> Result<&EigenvalueEntry> {
        self.eigenvalues
            .binary_search_by_key(&p, |e| e.p)
            .map(|i| &self.eigenvalues[i])
            .map_err(|_| Error::MissingPrime { label: self.label.clone(), p })
    }

    pub fn lambda_p(&self, p: u64) -> Result<&BigInt> {
        Ok(&self.entry(p)?.lambda_p)
    }

    pub fn lambda_p2(&self, p: u64) -> Result<&BigInt> {
        self.entry(p)?
            .lambda_p2
            .as_ref()
            .ok_or_else(|| Error::MissingSquareEigenvalue { label: self.label.clone(), p })
    }

    pub fn max_prime(&self) -> Option<u64> {
        self.eigenvalues.last().map(|e| e.p)
    }

    /// Numeric Satake parameters at `p` for degree 1 or 2 records.
    pub fn satake<T: Real>(&self, p: u64) -> Result<SatakeParams<T>> {
        match self.degree {
            1 => satake_from_gl2(self.weight, p, self.lambda_p(p)?),
            2 => satake_from_gsp4(self.weight, p, self.lambda_p(p)?, self.lambda_p2(p)?),
            d => Err(Error::UnsupportedDegree(d)),
        }
    }
}

/// `p^e` as an exact integer.
pub fn int_pow(p: u64, e: u32) -> BigInt {
    if e == 0 {
        return BigInt::one();
    }
    Pow::pow(BigInt::from(p), e)
}
