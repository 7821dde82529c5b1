//! The torus lifting `Θ((a0, a1), (b0, b1, b2)) = (a0 b0; b1, b2, a1)` from
//! `GL(2) × GSp(4)` parameters to `GSp(6)` parameters, the weight rule it
//! forces, and checks that the lifted spin factor is the tensor product
//! factor.

use num_bigint::BigInt;
use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hodge::{hodge_gl2, hodge_gsp4, kunneth_tensor, matching_weight, HodgeType};
use crate::json;
use crate::local_factors::{
    factors_close, gl2_factor_exact, gsp4_spin_factor_exact, record_spin_factor_exact, spin_local_factor,
    tensor_local_factor, LocalFactor, Representation,
};
use crate::poly::{from_power_sums, power_sums};
use crate::satake::{EigenvalueRecord, SatakeParams};
use crate::scalar::Real;

/// Outcome of the weight rule. A rejection is an answer, not an error.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LiftWeights {
    Accepted { k: u32 },
    /// No degree-3 Hodge type equals the Künneth product; `tensor` is that
    /// product, the witness that nothing matches.
    Rejected { k1: u32, k2: u32, tensor: HodgeType },
}

impl LiftWeights {
    pub fn accepted(&self) -> Option<u32> {
        match self {
            Self::Accepted { k } => Some(*k),
            Self::Rejected { .. } => None,
        }
    }
}

/// Accepts exactly `k1 = k2 - 2`, returning `k = k2`. The decision is made by
/// the Hodge comparison; both weights must be even and positive.
pub fn lift_weights(k1: u32, k2: u32) -> Result<LiftWeights> {
    match matching_weight(k1, k2)? {
        Some(k) if k == k2 && k1 + 2 == k2 => Ok(LiftWeights::Accepted { k }),
        Some(k) => Err(Error::Defect(format!(
            "Hodge match ({k1}, {k2}) -> {k} is outside the family k1 = k - 2, k2 = k"
        ))),
        None => Ok(LiftWeights::Rejected {
            k1,
            k2,
            tensor: kunneth_tensor(&hodge_gl2(k1)?, &hodge_gsp4(k2)?),
        }),
    }
}

/// Integral Hecke data behind a lift input, for the exact code paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactLiftData {
    #[serde(with = "json::decimal")]
    pub a_p: BigInt,
    #[serde(with = "json::decimal")]
    pub lambda_p: BigInt,
    #[serde(with = "json::decimal")]
    pub lambda_p2: BigInt,
}

/// A `GL(2)` and a `GSp(4)` parameter at the same prime.
///
/// `assume_modular` records the hypothesis that the lifted object is
/// automorphic; nothing here checks or uses it beyond reporting.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftInput<T> {
    gl2: SatakeParams<T>,
    gsp4: SatakeParams<T>,
    exact: Option<ExactLiftData>,
    pub assume_modular: bool,
}

impl<T: Real> LiftInput<T> {
    /// Enforces the weight rule.
    pub fn new(gl2: SatakeParams<T>, gsp4: SatakeParams<T>) -> Result<Self> {
        let input = Self::new_unchecked(gl2, gsp4)?;
        input.lifted_weight()?;
        Ok(input)
    }

    /// Checks degrees and primes only; for building counterexamples.
    pub fn new_unchecked(gl2: SatakeParams<T>, gsp4: SatakeParams<T>) -> Result<Self> {
        if gl2.degree() != 1 {
            return Err(Error::DegreeMismatch(gl2.degree(), 1));
        }
        if gsp4.degree() != 2 {
            return Err(Error::DegreeMismatch(gsp4.degree(), 2));
        }
        if gl2.prime() != gsp4.prime() {
            return Err(Error::PrimeMismatch(gl2.prime(), gsp4.prime()));
        }
        Ok(Self { gl2, gsp4, exact: None, assume_modular: true })
    }

    pub fn with_exact(mut self, data: ExactLiftData) -> Self {
        self.exact = Some(data);
        self
    }

    /// Numeric parameters and exact data at `p` from a degree-1 and a
    /// degree-2 eigenvalue record.
    pub fn from_records(h: &EigenvalueRecord, g: &EigenvalueRecord, p: u64) -> Result<Self> {
        if h.degree != 1 {
            return Err(Error::DegreeMismatch(h.degree, 1));
        }
        if g.degree != 2 {
            return Err(Error::DegreeMismatch(g.degree, 2));
        }
        let data = ExactLiftData {
            a_p: h.lambda_p(p)?.clone(),
            lambda_p: g.lambda_p(p)?.clone(),
            lambda_p2: g.lambda_p2(p)?.clone(),
        };
        Ok(Self::new(h.satake(p)?, g.satake(p)?)?.with_exact(data))
    }

    pub fn gl2(&self) -> &SatakeParams<T> {
        &self.gl2
    }

    pub fn gsp4(&self) -> &SatakeParams<T> {
        &self.gsp4
    }

    pub fn exact(&self) -> Option<&ExactLiftData> {
        self.exact.as_ref()
    }

    pub fn prime(&self) -> u64 {
        self.gl2.prime()
    }

    pub fn lifted_weight(&self) -> Result<u32> {
        let (k1, k2) = (self.gl2.weight(), self.gsp4.weight());
        match lift_weights(k1, k2) {
            Ok(LiftWeights::Accepted { k }) => Ok(k),
            Ok(LiftWeights::Rejected { .. }) => Err(Error::WeightMismatch { k1, k2 }),
            // odd or zero weights fall outside the rule as well
            Err(Error::InvalidWeight(_)) => Err(Error::WeightMismatch { k1, k2 }),
            Err(e) => Err(e),
        }
    }

    pub fn gl2_factor_exact(&self) -> Result<LocalFactor<BigInt>> {
        let d = self.exact.as_ref().ok_or(Error::MissingExactData)?;
        Ok(gl2_factor_exact(self.gl2.weight(), self.prime(), &d.a_p))
    }

    pub fn gsp4_factor_exact(&self) -> Result<LocalFactor<BigInt>> {
        let d = self.exact.as_ref().ok_or(Error::MissingExactData)?;
        gsp4_spin_factor_exact(self.gsp4.weight(), self.prime(), &d.lambda_p, &d.lambda_p2)
    }
}

/// `Θ` on raw parameters, without the weight rule. The result carries the
/// weight of the `GSp(4)` part.
pub fn theta<T: Real>(gl2: &SatakeParams<T>, gsp4: &SatakeParams<T>) -> Result<SatakeParams<T>> {
    if gl2.degree() != 1 || gsp4.degree() != 2 {
        return Err(Error::DegreeMismatch(gl2.degree(), gsp4.degree()));
    }
    if gl2.prime() != gsp4.prime() {
        return Err(Error::PrimeMismatch(gl2.prime(), gsp4.prime()));
    }
    let (a, b) = (gl2.mu(), gsp4.mu());
    SatakeParams::new(3, gsp4.weight(), gsp4.prime(), gl2.mu0() * gsp4.mu0(), vec![b[0], b[1], a[0]])
}

/// `Θ` on a checked input; the output is normalized for weight `k = k2`
/// whenever both inputs are.
pub fn theta_lift<T: Real>(input: &LiftInput<T>) -> Result<SatakeParams<T>> {
    input.lifted_weight()?;
    theta(&input.gl2, &input.gsp4)
}

/// Exact spin factor of the lifted parameters.
///
/// The eight spin weights of `Θ(a, b)` are the products of the two `GL(2)`
/// weights with the four `GSp(4)` spin weights, so the power sums multiply:
/// `p_m(lift) = p_m(A) p_m(B)`. Newton's identities then rebuild the factor
/// over the integers without ever forming the (irrational) parameters.
pub fn lifted_spin_factor_exact<T: Real>(input: &LiftInput<T>) -> Result<LocalFactor<BigInt>> {
    input.lifted_weight()?;
    let a = input.gl2_factor_exact()?;
    let b = input.gsp4_factor_exact()?;
    let d = a.degree() * b.degree();
    let pa = power_sums(a.poly(), d);
    let pb = power_sums(b.poly(), d);
    let p: Vec<BigInt> = pa.iter().zip(&pb).map(|(x, y)| x * y).collect();
    LocalFactor::new(input.prime(), Representation::Spin(3), from_power_sums(&p, d)?)
}

/// Exact degree-8 factor `det(1 - (C_h ⊗ C_G) X)` straight from two
/// eigenvalue records, for Euler products over many primes.
pub fn tensor_factor_from_records(h: &EigenvalueRecord, g: &EigenvalueRecord, p: u64) -> Result<LocalFactor<BigInt>> {
    tensor_local_factor(&record_spin_factor_exact(h, p)?, &record_spin_factor_exact(g, p)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    Exact,
    Numeric,
}

/// Coefficient list as it appears in reports: decimal strings when exact,
/// `[re, im]` pairs when numeric.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Coefficients {
    Exact(#[serde(with = "json::decimal_vec")] Vec<BigInt>),
    Numeric(Vec<[f64; 2]>),
}

impl Coefficients {
    fn numeric<T: Real>(f: &LocalFactor<Complex<T>>) -> Self {
        Self::Numeric(
            f.coeffs()
                .iter()
                .map(|c| [c.re.to_f64().unwrap_or(f64::NAN), c.im.to_f64().unwrap_or(f64::NAN)])
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TensorReport {
    pub p: u64,
    pub mode: VerifyMode,
    pub holds: bool,
    /// spin factor of the lifted parameters
    pub lifted: Coefficients,
    /// `det(1 - (C_A ⊗ C_B) X)`
    pub tensor: Coefficients,
}

/// Relative tolerance for numeric comparisons: `1e-6`, loosened for types
/// whose precision cannot reach it.
pub fn numeric_tolerance<T: Real>() -> T {
    T::of(1e-6).max(T::epsilon() * T::of(1e3))
}

/// Compares the two routes to the degree-8 factor: spin factor of `Θ(in)`
/// against the companion-matrix tensor product of the component factors.
/// Exact mode compares big integers; numeric mode uses
/// [`numeric_tolerance`] through [`factors_close`].
pub fn verify_tensor_identity<T: Real>(input: &LiftInput<T>, mode: VerifyMode) -> Result<TensorReport> {
    match mode {
        VerifyMode::Exact => {
            let lifted = lifted_spin_factor_exact(input)?;
            let tensor = tensor_local_factor(&input.gl2_factor_exact()?, &input.gsp4_factor_exact()?)?;
            Ok(TensorReport {
                p: input.prime(),
                mode,
                holds: lifted.coeffs() == tensor.coeffs(),
                lifted: Coefficients::Exact(lifted.coeffs().to_vec()),
                tensor: Coefficients::Exact(tensor.coeffs().to_vec()),
            })
        }
        VerifyMode::Numeric => tensor_identity_numeric(&theta_lift(input)?, &input.gl2, &input.gsp4),
    }
}

/// Numeric route comparison with the lifted parameters supplied separately,
/// so a deliberately wrong lift can be checked against honest components.
pub fn tensor_identity_numeric<T: Real>(
    lifted: &SatakeParams<T>,
    gl2: &SatakeParams<T>,
    gsp4: &SatakeParams<T>,
) -> Result<TensorReport> {
    let lhs = spin_local_factor(lifted);
    let rhs = tensor_local_factor(&spin_local_factor(gl2), &spin_local_factor(gsp4))?;
    Ok(TensorReport {
        p: lifted.prime(),
        mode: VerifyMode::Numeric,
        holds: factors_close(&lhs, &rhs, numeric_tolerance()),
        lifted: Coefficients::numeric(&lhs),
        tensor: Coefficients::numeric(&rhs),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenvalueProduct {
    pub p: u64,
    #[serde(with = "json::decimal")]
    pub lambda_h: BigInt,
    #[serde(with = "json::decimal")]
    pub lambda_g: BigInt,
    #[serde(with = "json::decimal")]
    pub product: BigInt,
    #[serde(with = "json::decimal_opt", skip_serializing_if = "Option::is_none")]
    pub expected: Option<BigInt>,
    /// `None` when there was nothing to compare against.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
}

/// `lambda_p(h) lambda_p(G)`, compared exactly with `expected` if given.
pub fn verify_eigenvalue_product(
    h: &EigenvalueRecord,
    g: &EigenvalueRecord,
    expected: Option<&BigInt>,
    p: u64,
) -> Result<EigenvalueProduct> {
    let lambda_h = h.lambda_p(p)?.clone();
    let lambda_g = g.lambda_p(p)?.clone();
    let product = &lambda_h * &lambda_g;
    Ok(EigenvalueProduct {
        p,
        holds: expected.map(|e| *e == product),
        expected: expected.cloned(),
        lambda_h,
        lambda_g,
        product,
    })
}
