//! Archimedean bookkeeping and Euler products: `Γ_C`, Gamma profiles of the
//! completed L-functions, critical integers, period normalization,
//! convergence abscissae, and truncated Euler products with a rigorous tail
//! bound.

use num_complex::Complex;
use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::local_factors::{evaluate, rescaled, LocalFactor};
use crate::poly::inverse_roots;
use crate::primes::primes_up_to;
use crate::scalar::{Real, Ring, ToComplex};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn nonpositive_integer<T: Real>(s: Complex<T>) -> Option<i64> {
    (s.im == T::zero() && s.re <= T::zero() && s.re.fract() == T::zero())
        .then(|| s.re.to_i64().unwrap_or(i64::MIN))
}

/// `log Γ(s)` (some branch; only its exponential is used) by the Lanczos
/// approximation, with reflection for `Re(s) < 1/2`.
pub fn ln_gamma<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    if let Some(n) = nonpositive_integer(s) {
        return Err(Error::GammaPole(n));
    }
    let half = T::of(0.5);
    let pi = T::PI();
    if s.re < half {
        // Γ(s) Γ(1 - s) = π / sin(π s)
        let one = Complex::new(T::one(), T::zero());
        let refl = ln_gamma(one - s)?;
        return Ok(Complex::new(pi.ln(), T::zero()) - (s * pi).sin().ln() - refl);
    }
    let z = s - T::one();
    let mut a = Complex::new(T::of(LANCZOS[0]), T::zero());
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a = a + (z + T::of(i as f64)).inv() * T::of(*c);
    }
    let t = z + T::of(LANCZOS_G) + half;
    let ln_sqrt_2pi = T::of(0.5) * (T::of(2.0) * pi).ln();
    Ok(Complex::new(ln_sqrt_2pi, T::zero()) + (z + half) * t.ln() - t + a.ln())
}

pub fn gamma<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    Ok(ln_gamma(s)?.exp())
}

/// `Γ_C(s) = 2 (2π)^{-s} Γ(s)`.
pub fn gamma_c<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    let two_pi = T::of(2.0) * T::PI();
    let ln = ln_gamma(s)? + T::of(2.0).ln() - s * two_pi.ln();
    Ok(ln.exp())
}

/// Constant in front of a Gamma product: `rational * (2π)^two_pi_exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prefactor {
    pub rational: Rational64,
    pub two_pi_exponent: i64,
}

impl Prefactor {
    pub const ONE: Self = Self { rational: Rational64::new_raw(1, 1), two_pi_exponent: 0 };

    pub fn value<T: Real>(&self) -> T {
        let r = T::of(*self.rational.numer() as f64) / T::of(*self.rational.denom() as f64);
        r * (T::of(2.0) * T::PI()).powi(self.two_pi_exponent as i32)
    }
}

impl Serialize for Prefactor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            rational: String,
            two_pi_exponent: i64,
        }
        Wire { rational: self.rational.to_string(), two_pi_exponent: self.two_pi_exponent }.serialize(s)
    }
}

/// `prefactor * prod_i Γ_C(s + d_i)`, with functional equation center `c`
/// (symmetry `s -> c - s`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaProfile {
    shifts: Vec<i64>,
    prefactor: Prefactor,
    center: i64,
}

impl GammaProfile {
    pub fn new(mut shifts: Vec<i64>, prefactor: Prefactor, center: i64) -> Result<Self> {
        if shifts.is_empty() {
            return Err(Error::Domain("a Gamma profile needs at least one factor".into()));
        }
        shifts.sort_unstable();
        Ok(Self { shifts, prefactor, center })
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn prefactor(&self) -> Prefactor {
        self.prefactor
    }

    pub fn center(&self) -> i64 {
        self.center
    }

    /// No factor has a pole at the integer `m`.
    pub fn finite_at(&self, m: i64) -> bool {
        self.shifts.iter().all(|d| m + d >= 1)
    }

    pub fn evaluate<T: Real>(&self, s: Complex<T>) -> Result<Complex<T>> {
        let mut acc = Complex::new(self.prefactor.value::<T>(), T::zero());
        for d in &self.shifts {
            acc = acc * gamma_c(s + T::of(*d as f64))?;
        }
        Ok(acc)
    }
}

fn require_even(k: i64, min: i64, what: &str) -> Result<()> {
    if k < min || k % 2 != 0 {
        return Err(Error::InvalidWeight(format!("{what} needs an even weight >= {min}, got {k}")));
    }
    Ok(())
}

/// `Γ_C(s) prod_{m=1}^{3} Γ_C(s - k + m)`, center `3k - 5`.
pub fn linf_spin3(k: u32) -> Result<GammaProfile> {
    let k = k as i64;
    require_even(k, 12, "the degree-3 spin profile")?;
    GammaProfile::new(vec![0, 1 - k, 2 - k, 3 - k], Prefactor::ONE, 3 * k - 5)
}

/// Archimedean factor of the Rankin-Selberg product of weights `k1 <= k2`:
/// `2^{-3} (2π)^{4 - 2k2 - k1} Γ_C(s) Γ_C(s-k2+1) Γ_C(s-k2+2) Γ_C(s-k1+1)`,
/// center `k1 + 2k2 - 3`.
pub fn linf_rankin_selberg(k1: u32, k2: u32) -> Result<GammaProfile> {
    let (k1, k2) = (k1 as i64, k2 as i64);
    require_even(k1, 2, "the Rankin-Selberg profile")?;
    require_even(k2, 2, "the Rankin-Selberg profile")?;
    if k1 > k2 {
        return Err(Error::InvalidWeight(format!("need k1 <= k2, got ({k1}, {k2})")));
    }
    let prefactor = Prefactor { rational: Rational64::new(1, 8), two_pi_exponent: 4 - 2 * k2 - k1 };
    GammaProfile::new(vec![0, 1 - k2, 2 - k2, 1 - k1], prefactor, k1 + 2 * k2 - 3)
}

/// Integers `m` where both `L_∞(m)` and `L_∞(3k - 5 - m)` are finite. The
/// scan must land on `k..=2k-5`; anything else is a defect.
pub fn critical_values(k: u32) -> Result<Vec<i64>> {
    let profile = linf_spin3(k)?;
    let c = profile.center();
    let reach = c + profile.shifts().iter().map(|d| d.abs()).max().unwrap_or(0) + 1;
    let found: Vec<i64> = (-reach..=reach)
        .filter(|&m| profile.finite_at(m) && profile.finite_at(c - m))
        .collect();
    let k = k as i64;
    let expected: Vec<i64> = (k..=2 * k - 5).collect();
    if found != expected {
        return Err(Error::Defect(format!(
            "critical integers for k = {k} came out as {found:?}, expected {k}..={}",
            2 * k - 5
        )));
    }
    Ok(found)
}

/// `L(m) / (π^{4m - 3k + 6} Ω)` for a critical `m` and a caller-supplied
/// period `Ω > 0`.
pub fn deligne_normalize<T: Real>(m: i64, k: u32, l_value: T, omega: T) -> Result<T> {
    if !critical_values(k)?.contains(&m) {
        return Err(Error::NotCritical(m));
    }
    // also rejects NaN
    if omega.partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::Domain("the period must be positive".into()));
    }
    let e = 4 * m - 3 * k as i64 + 6;
    Ok(l_value / (T::PI().powi(e as i32) * omega))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RepresentationKind {
    Spin,
    Standard,
}

/// Right half-plane `Re(s) > c` of absolute convergence.
///
/// For the spin factor under Ramanujan the inverse roots have modulus
/// `p^{w/2}` with `w = nk - n(n+1)/2`, so `c = w/2 + 1`:
/// `(k+1)/2`, `k - 1/2`, `3k/2 - 2` for `n = 1, 2, 3`. Without Ramanujan no
/// sharp value is claimed (`None`). The standard factor converges for
/// `Re(s) > n + 1` unconditionally.
pub fn convergence_abscissa(kind: RepresentationKind, n: usize, k: u32, ramanujan: bool) -> Result<Option<f64>> {
    if !(1..=3).contains(&n) {
        return Err(Error::UnsupportedDegree(n));
    }
    Ok(match kind {
        RepresentationKind::Standard => Some(n as f64 + 1.0),
        RepresentationKind::Spin if ramanujan => {
            let (n, k) = (n as f64, k as f64);
            Some((n * k - n * (n + 1.0) / 2.0) / 2.0 + 1.0)
        }
        RepresentationKind::Spin => None,
    })
}

/// Knobs for [`truncated_euler_product`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerOptions {
    /// Inverse roots are assumed to satisfy `|r| <= p^{w/2 + root_shift}`.
    /// `0` is Ramanujan; lifts involving a Saito-Kurokawa factor need `1/2`.
    pub root_shift: f64,
    /// Required margin beyond the abscissa.
    pub delta: f64,
    /// Relative slack when checking root moduli.
    pub root_slack: f64,
}

impl Default for EulerOptions {
    fn default() -> Self {
        Self { root_shift: 0.0, delta: 1e-6, root_slack: 1e-6 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EulerProductResult {
    pub value: [f64; 2],
    pub prime_bound: u64,
    pub primes_used: usize,
    /// bound on `|log L - log L_P|`
    pub tail_bound: f64,
    /// bound on `|L - L_P|`, i.e. `|L_P| (e^tail - 1)`
    pub value_bound: f64,
    /// `w/2 + root_shift + 1`, the abscissa the bound was derived for
    pub abscissa: f64,
    pub root_exponent: f64,
    pub degree: usize,
}

/// `(p, roots within bound, degree, 1 / f_p(p^{-s}))`
type PrimeTerm = (u64, bool, usize, Complex<f64>);

/// `prod_{p <= P} 1 / f_p(p^{-s})` with a tail bound.
///
/// With `a = Re(s) - θ`, `θ = w/2 + root_shift`, every inverse root obeys
/// `|r p^{-s}| <= p^{-a}`, and `|log(1 - x)| <= |x| / (1 - |x|)` gives
/// `|log L - log L_P| <= d P^{1-a} / ((a - 1)(1 - (P+1)^{-a}))`, where `d` is
/// the largest factor degree seen (assumed to persist beyond `P`).
///
/// Factors are evaluated in parallel and multiplied in ascending prime order.
pub fn truncated_euler_product<R, F>(
    factor_at: F,
    s: Complex<f64>,
    prime_bound: u64,
    weight: i64,
    opts: EulerOptions,
) -> Result<EulerProductResult>
where
    R: Ring + ToComplex<f64>,
    F: Fn(u64) -> Result<LocalFactor<R>> + Sync,
{
    let theta = weight as f64 / 2.0 + opts.root_shift;
    let abscissa = theta + 1.0;
    if s.re.partial_cmp(&(abscissa + opts.delta)) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::AbscissaViolation { re_s: s.re, abscissa });
    }
    if prime_bound < 2 {
        return Err(Error::Domain("prime bound must be at least 2".into()));
    }
    let primes = primes_up_to(prime_bound);
    let per_prime: Vec<Result<PrimeTerm>> = primes
        .par_iter()
        .map(|&p| {
            let f = factor_at(p)?;
            if f.prime() != p {
                return Err(Error::PrimeMismatch(f.prime(), p));
            }
            let limit = 1.0 + opts.root_slack;
            let ok = inverse_roots(&rescaled(&f, theta)).iter().all(|r| r.norm() <= limit);
            Ok((p, ok, f.degree(), evaluate(&f, s)?))
        })
        .collect();

    let mut value = Complex::new(1.0, 0.0);
    let mut degree = 0;
    let mut violations = Vec::new();
    for r in per_prime {
        let (p, ok, d, v) = r?;
        if !ok {
            violations.push(p);
        }
        degree = degree.max(d);
        value *= v;
    }
    if !violations.is_empty() {
        return Err(Error::RootModulus(violations));
    }

    let a = s.re - theta;
    let big_p = prime_bound as f64;
    let tail_bound = degree as f64 * big_p.powf(1.0 - a) / ((a - 1.0) * (1.0 - (big_p + 1.0).powf(-a)));
    Ok(EulerProductResult {
        value: [value.re, value.im],
        prime_bound,
        primes_used: primes.len(),
        tail_bound,
        value_bound: value.norm() * tail_bound.exp_m1(),
        abscissa,
        root_exponent: theta,
        degree,
    })
}
