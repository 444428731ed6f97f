//! Mean and variance of the squared Hellinger distance `D_H = 2 - 2A`,
//! `A = tr(sqrt ρ1 sqrt ρ2)`, for one fixed and one random state or for two
//! independent random states.
//!
//! Averaging over the Haar-distributed eigenbasis reduces every statistic to
//! the spectral moments `<tr sqrt ρ>` and `<(tr sqrt ρ)^2>` of
//! [`crate::exactmoments`] together with low-order Weingarten values.
//! `var(D_H) = 4 (<A^2> - <A>^2)`, and the distribution of `D_H` is
//! approximated by the gamma law with the same mean and variance.

mod gamma;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use gamma::{gamma_pdf, GammaFit};

use crate::ensembles::{EnsembleParams, Spectrum};
use crate::error::{invalid, Error, Result};
use crate::exactmoments::{sqrt_trace_moments, WeingartenConstants};
use crate::specialfn::hyp2f1;

/// Negative variances down to this magnitude are rounding and are clamped.
pub const VARIANCE_CLAMP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    FixedVsRandom,
    RandomVsRandom,
}

impl ScenarioKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioKind::FixedVsRandom => "fixed_vs_random",
            ScenarioKind::RandomVsRandom => "random_vs_random",
        }
    }
}

/// Either a fixed spectrum against one ensemble, or two independent
/// ensembles of the same dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawScenario", into = "RawScenario")]
pub struct Scenario {
    kind: ScenarioKind,
    fixed_spectrum: Option<Spectrum>,
    ensemble_1: EnsembleParams,
    ensemble_2: Option<EnsembleParams>,
}

#[derive(Serialize, Deserialize)]
struct RawScenario {
    kind: ScenarioKind,
    fixed_spectrum: Option<Spectrum>,
    ensemble_1: EnsembleParams,
    ensemble_2: Option<EnsembleParams>,
}

impl TryFrom<RawScenario> for Scenario {
    type Error = Error;

    fn try_from(raw: RawScenario) -> Result<Self> {
        match (raw.kind, raw.fixed_spectrum, raw.ensemble_2) {
            (ScenarioKind::FixedVsRandom, Some(sigma), None) => Scenario::fixed_vs_random(sigma, raw.ensemble_1),
            (ScenarioKind::RandomVsRandom, None, Some(p2)) => Scenario::random_vs_random(raw.ensemble_1, p2),
            (kind, ..) => Err(invalid(format!(
                "{} scenario has inconsistent fields",
                kind.as_str()
            ))),
        }
    }
}

impl From<Scenario> for RawScenario {
    fn from(s: Scenario) -> Self {
        Self {
            kind: s.kind,
            fixed_spectrum: s.fixed_spectrum,
            ensemble_1: s.ensemble_1,
            ensemble_2: s.ensemble_2,
        }
    }
}

impl Scenario {
    pub fn fixed_vs_random(sigma: Spectrum, params: EnsembleParams) -> Result<Self> {
        if sigma.len() != params.n() {
            return Err(invalid(format!(
                "fixed spectrum has {} values, ensemble {params} has n = {}",
                sigma.len(),
                params.n()
            )));
        }
        Ok(Self {
            kind: ScenarioKind::FixedVsRandom,
            fixed_spectrum: Some(sigma),
            ensemble_1: params,
            ensemble_2: None,
        })
    }

    pub fn random_vs_random(p1: EnsembleParams, p2: EnsembleParams) -> Result<Self> {
        if p1.n() != p2.n() {
            return Err(invalid(format!("dimension mismatch: {p1} against {p2}")));
        }
        Ok(Self {
            kind: ScenarioKind::RandomVsRandom,
            fixed_spectrum: None,
            ensemble_1: p1,
            ensemble_2: Some(p2),
        })
    }

    pub fn kind(&self) -> ScenarioKind {
        self.kind
    }

    pub fn fixed_spectrum(&self) -> Option<&Spectrum> {
        self.fixed_spectrum.as_ref()
    }

    pub fn ensemble_1(&self) -> &EnsembleParams {
        &self.ensemble_1
    }

    pub fn ensemble_2(&self) -> Option<&EnsembleParams> {
        self.ensemble_2.as_ref()
    }

    /// Common dimension `n` of both states.
    pub fn n(&self) -> usize {
        self.ensemble_1.n()
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.fixed_spectrum, &self.ensemble_2) {
            (Some(sigma), _) => write!(f, "fixed{:?} vs {}", sigma.values(), self.ensemble_1),
            (None, Some(p2)) => write!(f, "{} vs {}", self.ensemble_1, p2),
            (None, None) => write!(f, "{}", self.ensemble_1),
        }
    }
}

/// Exact statistics of `A` and `D_H` for one scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HellingerSummary {
    pub mean_affinity: f64,
    pub mean_sq_affinity: f64,
    pub mean_dh: f64,
    pub var_dh: f64,
    /// Absent when `var_dh = 0`.
    pub gamma_shape: Option<f64>,
    pub gamma_rate: Option<f64>,
}

impl HellingerSummary {
    pub fn gamma_fit(&self) -> Option<GammaFit> {
        match (self.gamma_shape, self.gamma_rate) {
            (Some(shape), Some(rate)) => Some(GammaFit { shape, rate }),
            _ => None,
        }
    }
}

fn check_sigma(sigma: &Spectrum, params: &EnsembleParams) -> Result<()> {
    if sigma.len() != params.n() {
        return Err(invalid(format!(
            "fixed spectrum has {} values, ensemble {params} has n = {}",
            sigma.len(),
            params.n()
        )));
    }
    Ok(())
}

/// `<A(ρ, σ)> = (1/n) tr sqrt σ <tr sqrt ρ>`.
pub fn mean_affinity_fixed(sigma: &Spectrum, params: &EnsembleParams) -> Result<f64> {
    check_sigma(sigma, params)?;
    let n = params.n();
    if n == 1 {
        return Ok(1.0);
    }
    let moments = sqrt_trace_moments(params)?;
    Ok(sigma.sqrt_trace() * moments.first / n as f64)
}

/// `<A(ρ, σ)^2> = Wg(1,1) [(1 - t^2/n) + (t^2 - 1/n) <(tr sqrt ρ)^2>]`,
/// `t = tr sqrt σ`.
pub fn mean_sq_affinity_fixed(sigma: &Spectrum, params: &EnsembleParams) -> Result<f64> {
    check_sigma(sigma, params)?;
    let n = params.n();
    if n == 1 {
        return Ok(1.0);
    }
    let wg = WeingartenConstants::new(n)?;
    let second = sqrt_trace_moments(params)?.second;
    let t = sigma.sqrt_trace();
    let t2 = t * t;
    let nf = n as f64;
    Ok(wg.wg11 * (1.0 - t2 / nf) + wg.wg11 * (t2 - 1.0 / nf) * second)
}

fn check_pair(p1: &EnsembleParams, p2: &EnsembleParams) -> Result<()> {
    if p1.n() != p2.n() {
        return Err(invalid(format!("dimension mismatch: {p1} against {p2}")));
    }
    Ok(())
}

/// `<A(ρ1, ρ2)> = (1/n) <tr sqrt ρ1> <tr sqrt ρ2>`.
pub fn mean_affinity_two_random(p1: &EnsembleParams, p2: &EnsembleParams) -> Result<f64> {
    check_pair(p1, p2)?;
    let n = p1.n();
    if n == 1 {
        return Ok(1.0);
    }
    let (f1, f2) = (sqrt_trace_moments(p1)?.first, sqrt_trace_moments(p2)?.first);
    Ok(f1 * f2 / n as f64)
}

/// `<A(ρ1, ρ2)^2> = [s1 s2 - (s1 + s2)/n + 1] / (n^2 - 1)` with
/// `s_i = <(tr sqrt ρ_i)^2>`. Symmetric in its arguments bitwise.
pub fn mean_sq_affinity_two_random(p1: &EnsembleParams, p2: &EnsembleParams) -> Result<f64> {
    check_pair(p1, p2)?;
    let n = p1.n();
    if n == 1 {
        return Ok(1.0);
    }
    let wg = WeingartenConstants::new(n)?;
    let (s1, s2) = (sqrt_trace_moments(p1)?.second, sqrt_trace_moments(p2)?.second);
    Ok((s1 * s2 - (s1 + s2) / n as f64 + 1.0) * wg.wg11)
}

/// Summary from the two affinity moments.
pub fn summary_from_affinity(mean_affinity: f64, mean_sq_affinity: f64) -> Result<HellingerSummary> {
    let mean_dh = 2.0 - 2.0 * mean_affinity;
    let mut var_dh = 4.0 * (mean_sq_affinity - mean_affinity * mean_affinity);
    if var_dh < 0.0 {
        if var_dh < -VARIANCE_CLAMP {
            return Err(Error::Consistency(format!(
                "negative variance {var_dh:e} from <A> = {mean_affinity}, <A^2> = {mean_sq_affinity}"
            )));
        }
        var_dh = 0.0;
    }
    if !(-VARIANCE_CLAMP..=2.0 + VARIANCE_CLAMP).contains(&mean_dh) {
        return Err(Error::Consistency(format!("mean D_H = {mean_dh} outside [0, 2]")));
    }
    let fit = GammaFit::from_moments(mean_dh, var_dh);
    Ok(HellingerSummary {
        mean_affinity,
        mean_sq_affinity,
        mean_dh,
        var_dh,
        gamma_shape: fit.map(|g| g.shape),
        gamma_rate: fit.map(|g| g.rate),
    })
}

/// Exact mean and variance of `D_H` with the matching gamma fit.
pub fn hellinger_summary(scenario: &Scenario) -> Result<HellingerSummary> {
    let (a1, a2) = match (&scenario.fixed_spectrum, &scenario.ensemble_2) {
        (Some(sigma), None) => (
            mean_affinity_fixed(sigma, &scenario.ensemble_1)?,
            mean_sq_affinity_fixed(sigma, &scenario.ensemble_1)?,
        ),
        (None, Some(p2)) => (
            mean_affinity_two_random(&scenario.ensemble_1, p2)?,
            mean_sq_affinity_two_random(&scenario.ensemble_1, p2)?,
        ),
        _ => return Err(invalid("scenario fields are inconsistent")),
    };
    summary_from_affinity(a1, a2)
}

/// Large-dimension approximation `[2F1(1/2, -1/2; 2; n/m)]^4` of
/// `<A^2>` for two independent Hilbert-Schmidt states with equal `m`.
pub fn asymptotic_mean_sq_affinity_hs(n: usize, m: usize) -> Result<f64> {
    if n == 0 || m < n {
        return Err(invalid(format!("need 1 <= n <= m, got n = {n}, m = {m}")));
    }
    Ok(hyp2f1(0.5, -0.5, 2.0, n as f64 / m as f64)?.powi(4))
}
