//! Cuspidality of the lifted parameters: Eisenstein-series parameter models,
//! the Chai-Faltings criterion, and a case-by-case refutation of each model.
//!
//! All moduli are compared as `log_p |mu|` with an absolute tolerance, so the
//! exponent arithmetic stays exact in spirit and nothing overflows at large
//! weight.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lifting::{theta_lift, LiftInput};
use crate::satake::SatakeParams;
use crate::scalar::{real_pow, Real};

/// Default tolerance on `log_p` moduli.
pub const LOG_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    /// `(p^{k-3}, p^{k-2}, p^{k-1})`
    SiegelEisenstein,
    /// `(g1, g2, p^{k-3})` from a degree-2 cusp form
    KlingenFromDegree2,
    /// `(g1, p^{k-2}, p^{k-3})` from an elliptic cusp form
    KlingenFromElliptic,
}

impl ModelKind {
    /// The proof case this template is refuted by.
    pub fn case(self) -> char {
        match self {
            Self::SiegelEisenstein => 'a',
            Self::KlingenFromDegree2 => 'b',
            Self::KlingenFromElliptic => 'c',
        }
    }
}

/// A non-cuspidal degree-3 parameter template at weight `k` and prime `p`.
/// Klingen models embed the Satake parameters `gamma` of a smaller cusp form.
#[derive(Clone, Debug, PartialEq)]
pub struct EisensteinModel<T> {
    pub kind: ModelKind,
    pub k: u32,
    pub p: u64,
    pub gamma: Option<SatakeParams<T>>,
}

impl<T: Real> EisensteinModel<T> {
    pub fn siegel(k: u32, p: u64) -> Self {
        Self { kind: ModelKind::SiegelEisenstein, k, p, gamma: None }
    }

    pub fn klingen_degree2(k: u32, gamma: SatakeParams<T>) -> Self {
        Self { kind: ModelKind::KlingenFromDegree2, k, p: gamma.prime(), gamma: Some(gamma) }
    }

    pub fn klingen_elliptic(k: u32, gamma: SatakeParams<T>) -> Self {
        Self { kind: ModelKind::KlingenFromElliptic, k, p: gamma.prime(), gamma: Some(gamma) }
    }
}

/// Orbit representative of a degree-2 parameter with `|g1 g2|` as close to 1
/// as possible; for a cusp form Chai-Faltings says it is exactly 1.
fn orient_degree2<T: Real>(g: &SatakeParams<T>) -> SatakeParams<T> {
    let defect = |s: &SatakeParams<T>| s.log_moduli().into_iter().fold(T::zero(), |a, x| a + x).abs();
    g.weyl_orbit()
        .into_iter()
        .min_by(|a, b| defect(a).partial_cmp(&defect(b)).expect("finite moduli"))
        .expect("orbit is nonempty")
}

/// Degree-3 parameters of the template, `mu_0` fixed by
/// `mu_0^2 mu_1 mu_2 mu_3 = p^{3k-6}` (principal branch, via logarithms).
pub fn eisenstein_params<T: Real>(model: &EisensteinModel<T>) -> Result<SatakeParams<T>> {
    let (k, p) = (model.k as i64, model.p);
    let pow = |e: i64| Complex::new(real_pow::<T>(p, e), T::zero());
    let mu = match model.kind {
        ModelKind::SiegelEisenstein => vec![pow(k - 3), pow(k - 2), pow(k - 1)],
        ModelKind::KlingenFromDegree2 => {
            let g = model.gamma.as_ref().ok_or(Error::MissingGamma("a degree-2 Klingen model"))?;
            if g.degree() != 2 {
                return Err(Error::DegreeMismatch(g.degree(), 2));
            }
            let g = orient_degree2(g);
            vec![g.mu()[0], g.mu()[1], pow(k - 3)]
        }
        ModelKind::KlingenFromElliptic => {
            let g = model.gamma.as_ref().ok_or(Error::MissingGamma("an elliptic Klingen model"))?;
            if g.degree() != 1 {
                return Err(Error::DegreeMismatch(g.degree(), 1));
            }
            vec![g.mu()[0], pow(k - 2), pow(k - 3)]
        }
    };
    let ln_p = T::of(p as f64).ln();
    let log_target = Complex::new(T::of((3 * k - 6) as f64) * ln_p, T::zero());
    let log_prod = mu.iter().fold(Complex::new(T::zero(), T::zero()), |acc, m| acc + m.ln());
    let mu0 = ((log_target - log_prod) / T::of(2.0)).exp();
    SatakeParams::new(3, model.k, p, mu0, mu)
}

/// Some Weyl-orbit element has `|mu_1 ... mu_n| = 1` (within `tol` in
/// `log_p`). Requires `k > n`.
pub fn chai_faltings_test<T: Real>(sp: &SatakeParams<T>, tol: T) -> Result<bool> {
    if sp.weight() as usize <= sp.degree() {
        return Err(Error::InvalidWeight(format!(
            "Chai-Faltings needs k > n, got k = {}, n = {}",
            sp.weight(),
            sp.degree()
        )));
    }
    Ok(orbit_product_logs(sp).iter().any(|x| x.abs() <= tol))
}

/// `log_p |mu_1 ... mu_n|` over the Weyl orbit.
fn orbit_product_logs<T: Real>(sp: &SatakeParams<T>) -> Vec<T> {
    sp.weyl_orbit()
        .iter()
        .map(|s| s.log_moduli().into_iter().fold(T::zero(), |a, x| a + x))
        .collect()
}

fn has_unit<T: Real>(logs: &[T], tol: T) -> bool {
    logs.iter().any(|x| x.abs() <= tol)
}

/// At least one lifted parameter `mu_1, mu_2, mu_3` has modulus 1.
pub fn lifted_mu_constraint<T: Real>(input: &LiftInput<T>, tol: T) -> Result<bool> {
    Ok(has_unit(&theta_lift(input)?.log_moduli(), tol))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Cuspidal,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModelReport {
    pub kind: ModelKind,
    pub case: char,
    /// `log_p |mu_i|` of the template parameters
    pub log_moduli: Vec<f64>,
    pub chai_faltings: bool,
    pub refuted: bool,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CuspidalityReport {
    pub k: u32,
    pub p: u64,
    pub verdict: Verdict,
    pub lifted_log_moduli: Vec<f64>,
    pub lifted_unit_parameter: bool,
    pub models: Vec<ModelReport>,
    pub warnings: Vec<String>,
}

fn to_f64s<T: Real>(xs: &[T]) -> Vec<f64> {
    xs.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
}

fn sorted_abs<T: Real>(xs: &[T]) -> Vec<T> {
    let mut v: Vec<T> = xs.iter().map(|x| x.abs()).collect();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite moduli"));
    v
}

/// Whether the lifted parameters could be the parameters of `model`, decided
/// by the argument of the matching proof case.
fn refute<T: Real>(
    kind: ModelKind,
    k: u32,
    model_logs: &[T],
    lifted_logs: &[T],
    lifted_unit: bool,
    cf: bool,
    tol: T,
) -> (bool, String) {
    let model_unit = has_unit(model_logs, tol);
    match kind {
        ModelKind::SiegelEisenstein | ModelKind::KlingenFromDegree2 if lifted_unit && !model_unit => (
            true,
            "template has no parameter of modulus 1, the lift has one".into(),
        ),
        ModelKind::SiegelEisenstein => (
            false,
            if lifted_unit {
                "template has a parameter of modulus 1".into()
            } else {
                "lift has no parameter of modulus 1".into()
            },
        ),
        ModelKind::KlingenFromDegree2 if !cf => (
            true,
            format!(
                "every orbit product |mu_1 mu_2 mu_3| is p^(+-{}) or worse, never 1: \
                 degree-3 Chai-Faltings fails",
                k as i64 - 3
            ),
        ),
        ModelKind::KlingenFromDegree2 => (false, "template passes Chai-Faltings".into()),
        ModelKind::KlingenFromElliptic => {
            let (a, b) = (sorted_abs(model_logs), sorted_abs(lifted_logs));
            let same = a.iter().zip(&b).all(|(x, y)| (*x - *y).abs() <= tol);
            if same {
                (false, "modulus pattern matches the lift".into())
            } else {
                (
                    true,
                    format!(
                        "modulus pattern {:?} differs from the lifted pattern {:?}",
                        to_f64s(&a),
                        to_f64s(&b)
                    ),
                )
            }
        }
    }
}

/// Runs every model against the lifted parameters. The verdict is
/// [`Verdict::Cuspidal`] iff every model is refuted; an empty model list is
/// vacuously cuspidal and says so in `warnings`.
pub fn cuspidality_decision<T: Real>(
    input: &LiftInput<T>,
    models: &[EisensteinModel<T>],
    tol: T,
) -> Result<CuspidalityReport> {
    let k = input.lifted_weight()?;
    let lifted = theta_lift(input)?;
    let lifted_logs = lifted.log_moduli();
    let lifted_unit = has_unit(&lifted_logs, tol);
    let mut warnings = Vec::new();
    if models.is_empty() {
        warnings.push("no Eisenstein models supplied; verdict is vacuous".to_string());
    }
    if !input.gl2().ramanujan_check(T::of(1e-6)) {
        warnings.push("GL(2) part violates Ramanujan-Petersson".to_string());
    }
    let mut reports = Vec::with_capacity(models.len());
    for model in models {
        if model.k != k || model.p != input.prime() {
            return Err(Error::Domain(format!(
                "model at (k, p) = ({}, {}) does not match the lift at ({k}, {})",
                model.k,
                model.p,
                input.prime()
            )));
        }
        let params = eisenstein_params(model)?;
        let logs = params.log_moduli();
        let cf = chai_faltings_test(&params, tol)?;
        let (refuted, reason) = refute(model.kind, k, &logs, &lifted_logs, lifted_unit, cf, tol);
        reports.push(ModelReport {
            kind: model.kind,
            case: model.kind.case(),
            log_moduli: to_f64s(&logs),
            chai_faltings: cf,
            refuted,
            reason,
        });
    }
    let verdict = if reports.iter().all(|r| r.refuted) {
        Verdict::Cuspidal
    } else {
        Verdict::Inconclusive
    };
    Ok(CuspidalityReport {
        k,
        p: input.prime(),
        verdict,
        lifted_log_moduli: to_f64s(&lifted_logs),
        lifted_unit_parameter: lifted_unit,
        models: reports,
        warnings,
    })
}

/// The three templates for a lift: Siegel; Klingen from the lift's own
/// degree-2 part; Klingen from its elliptic part.
pub fn standard_models<T: Real>(input: &LiftInput<T>) -> Result<Vec<EisensteinModel<T>>> {
    let k = input.lifted_weight()?;
    Ok(vec![
        EisensteinModel::siegel(k, input.prime()),
        EisensteinModel::klingen_degree2(k, input.gsp4().clone()),
        EisensteinModel::klingen_elliptic(k, input.gl2().clone()),
    ])
}
