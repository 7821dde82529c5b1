//! Test data from first principles: q-expansions of level-one forms, their
//! Hecke eigenvalues, and the Saito-Kurokawa description of the degree-2
//! weight-14 cusp form.
//!
//! Everything here is deterministic; the same configuration always yields a
//! byte-identical fixtures file.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::primes_up_to;
use crate::satake::{int_pow, satake_from_gl2, EigenvalueEntry, EigenvalueRecord, SatakeParams};
use crate::scalar::{Real, Ring};

pub const DEFAULT_TERMS: usize = 64;
pub const FIXTURES_SCHEMA_VERSION: u32 = 1;

pub const DELTA_LABEL: &str = "Delta.12.1";
pub const G26_LABEL: &str = "g26.26.1";
pub const SK14_LABEL: &str = "SK.14.2";

/// Power series `c(0) + c(1) q + ... + c(N) q^N + O(q^{N+1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> QSeries<R> {
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "series needs c(0)");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![R::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = R::one();
        s
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &R {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn truncate(mut self, order: usize) -> Self {
        self.coeffs.truncate(order + 1);
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self {
            coeffs: (0..=n)
                .map(|i| self.coeffs[i].clone() + other.coeffs[i].clone())
                .collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    /// Product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self { coeffs: (0..=n).map(|k| Self::product_coefficient(self, other, k)).collect() }
    }

    /// Coefficient of `q^n` in `a * b` without forming the full product.
    pub fn product_coefficient(a: &Self, b: &Self, n: usize) -> R {
        assert!(n <= a.order() && n <= b.order(), "index beyond truncation");
        (0..=n).fold(R::zero(), |acc, i| {
            let x = &a.coeffs[i];
            if x.is_zero() {
                acc
            } else {
                acc + x.clone() * b.coeffs[n - i].clone()
            }
        })
    }

    /// Multiply by `q^m`, keeping the order.
    pub fn shift(&self, m: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![R::zero(); n + 1];
        if m <= n {
            coeffs[m..].clone_from_slice(&self.coeffs[..=n - m]);
        }
        Self { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.order()), |acc, _| acc.mul(self))
    }
}

/// `sum_{d | n} d^e` for every `n <= order`, index 0 unused (set to 0).
pub fn divisor_sums(e: u32, order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); order + 1];
    for d in 1..=order {
        let de = int_pow(d as u64, e);
        let mut m = d;
        while m <= order {
            out[m] += &de;
            m += d;
        }
    }
    out
}

/// Bernoulli number `B_n` (with `B_1 = -1/2`).
pub fn bernoulli(n: usize) -> BigRational {
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for m in 1..=n {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b.pop().expect("nonempty")
}

/// Rational q-series stored as integer numerators over one common denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledSeries {
    pub numerators: QSeries<BigInt>,
    pub denominator: BigInt,
}

impl ScaledSeries {
    pub fn coefficient(&self, n: usize) -> BigRational {
        BigRational::new(self.numerators.coeff(n).clone(), self.denominator.clone())
    }

    /// The integer series when the denominator is 1.
    pub fn integral(&self) -> Option<QSeries<BigInt>> {
        self.denominator.is_one().then(|| self.numerators.clone())
    }
}

/// Normalized Eisenstein series `E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n`.
pub fn eisenstein(k: u32, order: usize) -> Result<ScaledSeries> {
    if k < 4 || k % 2 == 1 {
        return Err(Error::InvalidWeight(format!(
            "Eisenstein weight must be even and >= 4, got {k}"
        )));
    }
    let factor = -BigRational::from_integer(BigInt::from(2 * k)) / bernoulli(k as usize);
    let (num, den) = (factor.numer().clone(), factor.denom().clone());
    let sigma = divisor_sums(k - 1, order);
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(den.clone());
    coeffs.extend(sigma.into_iter().skip(1).map(|s| s * &num));
    Ok(ScaledSeries { numerators: QSeries::new(coeffs), denominator: den })
}

/// `prod_{n >= 1} (1 - q^n)` from the pentagonal number theorem.
pub fn euler_function(order: usize) -> QSeries<BigInt> {
    let mut s = QSeries::zero(order);
    let mut m: i64 = 0;
    loop {
        let mut any = false;
        for g in [m * (3 * m - 1) / 2, m * (3 * m + 1) / 2] {
            if (g as usize) <= order {
                any = true;
                s.coeffs[g as usize] = if m % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            }
        }
        if !any {
            break;
        }
        m += 1;
    }
    s
}

/// `h^r` for `h(0) = 1`, by the recurrence `n g_n = sum_k ((r+1)k - n) h_k g_{n-k}`.
/// Cheap when `h` is sparse.
fn power_of_unit_series(h: &QSeries<BigInt>, r: i64) -> QSeries<BigInt> {
    assert!(h.coeff(0).is_one(), "constant term must be 1");
    let order = h.order();
    let support: Vec<usize> = (1..=order).filter(|&k| !h.coeff(k).is_zero()).collect();
    let mut g = vec![BigInt::zero(); order + 1];
    g[0] = BigInt::one();
    for n in 1..=order {
        let mut acc = BigInt::zero();
        for &k in support.iter().take_while(|&&k| k <= n) {
            let w = (r + 1) * k as i64 - n as i64;
            acc += BigInt::from(w) * h.coeff(k) * &g[n - k];
        }
        let (q, rem) = acc.div_rem(&BigInt::from(n));
        debug_assert!(rem.is_zero());
        g[n] = q;
    }
    QSeries::new(g)
}

/// Ramanujan's `Delta = q prod (1 - q^n)^24`, coefficients `tau(0..=order)`.
pub fn delta(order: usize) -> QSeries<BigInt> {
    assert!(order >= 2, "need at least q^2");
    let g = power_of_unit_series(&euler_function(order), 24);
    g.shift(1)
}

/// The normalized eigenform spanning `S_26`, as `Delta * E_14`.
pub fn newform_weight26(order: usize) -> QSeries<BigInt> {
    let e14 = eisenstein(14, order)
        .expect("14 is a valid weight")
        .integral()
        .expect("E_14 has integral coefficients");
    delta(order).mul(&e14)
}

/// Degree-2 Saito-Kurokawa parameters of weight `k` attached to the
/// eigenvalue `a_p` of a weight `2k - 2` form: `beta_0 = p^{k-1}` with
/// `beta_0 beta_1`, `beta_0 beta_2` the roots of `X^2 - a_p X + p^{2k-3}`.
pub fn saito_kurokawa_satake<T: Real>(k: u32, p: u64, a_p: &BigInt) -> Result<SatakeParams<T>> {
    if k < 2 {
        return Err(Error::InvalidWeight(format!("degree-2 weight {k} too small")));
    }
    let g = satake_from_gl2::<T>(2 * k - 2, p, a_p)?;
    let b0 = num_complex::Complex::new(T::of(p as f64).powi(k as i32 - 1), T::zero());
    let r1 = g.mu0();
    let r2 = g.mu0() * g.mu()[0];
    SatakeParams::new(2, k, p, b0, vec![r1 / b0, r2 / b0])
}

/// `(lambda_p, lambda_{p^2})` of the weight-`k` Saito-Kurokawa lift, given
/// `a(p)` and `a(p^2)` of the weight `2k - 2` newform.
pub fn saito_kurokawa_eigenvalues(k: u32, p: u64, a_p: &BigInt, a_p2: &BigInt) -> (BigInt, BigInt) {
    let s = int_pow(p, k - 1) + int_pow(p, k - 2);
    let lambda_p = a_p + &s;
    let lambda_p2 = a_p2 + a_p * &s + int_pow(p, 2 * k - 3) + int_pow(p, 2 * k - 2);
    (lambda_p, lambda_p2)
}

/// Shared q-expansions for the fixture set, computed once per order.
#[derive(Clone, Debug)]
pub struct FixtureEngine {
    delta: QSeries<BigInt>,
    e14: QSeries<BigInt>,
}

impl FixtureEngine {
    pub fn new(order: usize) -> Self {
        let order = order.max(2);
        let e14 = eisenstein(14, order)
            .expect("14 is a valid weight")
            .integral()
            .expect("E_14 has integral coefficients");
        Self { delta: delta(order), e14 }
    }

    pub fn order(&self) -> usize {
        self.delta.order()
    }

    pub fn delta(&self) -> &QSeries<BigInt> {
        &self.delta
    }

    pub fn tau(&self, n: usize) -> BigInt {
        self.delta.coeff(n).clone()
    }

    /// Coefficient `a(n)` of the weight-26 newform.
    pub fn g26(&self, n: usize) -> BigInt {
        QSeries::product_coefficient(&self.delta, &self.e14, n)
    }

    /// `a(p^2)` directly when the expansion reaches it, otherwise from the
    /// Hecke relation `a(p^2) = a(p)^2 - p^{k-1}`.
    fn square_coefficient(&self, k: u32, p: u64, a_p: &BigInt, coeff: impl Fn(usize) -> BigInt) -> BigInt {
        let sq = (p * p) as usize;
        if sq <= self.order() {
            coeff(sq)
        } else {
            a_p * a_p - int_pow(p, k - 1)
        }
    }

    fn gl2_record(&self, label: &str, k: u32, bound: u64, coeff: impl Fn(usize) -> BigInt) -> EigenvalueRecord {
        let entries = primes_up_to(bound)
            .into_iter()
            .map(|p| {
                let a = coeff(p as usize);
                let a2 = self.square_coefficient(k, p, &a, &coeff);
                EigenvalueEntry { p, lambda_p: a, lambda_p2: Some(a2) }
            })
            .collect();
        EigenvalueRecord::new(label, 1, k, entries).expect("primes ascend")
    }

    pub fn delta_record(&self, bound: u64) -> EigenvalueRecord {
        self.gl2_record(DELTA_LABEL, 12, bound, |n| self.tau(n))
    }

    pub fn g26_record(&self, bound: u64) -> EigenvalueRecord {
        self.gl2_record(G26_LABEL, 26, bound, |n| self.g26(n))
    }

    pub fn sk14_record(&self, bound: u64) -> EigenvalueRecord {
        let entries = primes_up_to(bound)
            .into_iter()
            .map(|p| {
                let a = self.g26(p as usize);
                let a2 = self.square_coefficient(26, p, &a, |n| self.g26(n));
                let (l1, l2) = saito_kurokawa_eigenvalues(14, p, &a, &a2);
                EigenvalueEntry { p, lambda_p: l1, lambda_p2: Some(l2) }
            })
            .collect();
        EigenvalueRecord::new(SK14_LABEL, 2, 14, entries).expect("primes ascend")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FixtureConfig {
    pub prime_bound: u64,
    pub terms: usize,
}

impl Default for FixtureConfig {
    fn default() -> Self {
        Self { prime_bound: DEFAULT_TERMS as u64, terms: DEFAULT_TERMS }
    }
}

/// On-disk fixture set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixturesFile {
    pub schema_version: u32,
    pub terms: usize,
    pub prime_bound: u64,
    pub records: Vec<EigenvalueRecord>,
}

impl FixturesFile {
    pub fn record(&self, label: &str) -> Option<&EigenvalueRecord> {
        self.records.iter().find(|r| r.label == label)
    }
}

pub fn generate_fixtures(cfg: FixtureConfig) -> Result<FixturesFile> {
    if cfg.prime_bound < 2 {
        return Err(Error::Domain("prime bound must be at least 2".into()));
    }
    let terms = cfg.terms.max(cfg.prime_bound as usize).max(2);
    let engine = FixtureEngine::new(terms);
    Ok(FixturesFile {
        schema_version: FIXTURES_SCHEMA_VERSION,
        terms,
        prime_bound: cfg.prime_bound,
        records: vec![
            engine.delta_record(cfg.prime_bound),
            engine.g26_record(cfg.prime_bound),
            engine.sk14_record(cfg.prime_bound),
        ],
    })
}

/// Ramanujan-type bound check `|a| <= 2 p^{(k-1)/2}`, exact: `a^2 <= 4 p^{k-1}`.
pub fn within_deligne_bound(k: u32, p: u64, a: &BigInt) -> bool {
    a.abs().pow(2) <= BigInt::from(4) * int_pow(p, k - 1)
}
