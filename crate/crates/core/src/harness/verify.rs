use rand::Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use super::{
    two_by_two_moments_by_quadrature, verify_group_integral_fixed, verify_haar_moment2, verify_haar_moment4,
    GroupIntegralCheck, HaarCheck,
};
use crate::ensembles::{EnsembleKind, Spectrum};
use crate::error::Result;
use crate::exactmoments::{mean_sqrt_trace_bh, mean_sqrt_trace_hs, second_moment_sqrt_trace_bh, second_moment_sqrt_trace_hs};
use crate::rng::stream;

/// A five-level spectrum used as the default fixed state in examples.
pub const SAMPLE_SPECTRUM_N5: [f64; 5] = [0.07, 0.16, 0.17, 0.23, 0.37];

/// Uniform point on the probability simplex.
pub fn random_simplex_point<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Spectrum> {
    let xs: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = xs.iter().sum();
    Spectrum::normalized(xs.into_iter().map(|x| x / total).collect(), 1e-12)
}

/// A closed form against the tanh-sinh integral of the 2x2 joint density.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureCheck {
    pub name: String,
    pub kind: EnsembleKind,
    pub m: usize,
    pub formula: f64,
    pub quadrature: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl QuadratureCheck {
    fn new(name: &str, kind: EnsembleKind, m: usize, formula: f64, quadrature: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            kind,
            m,
            formula,
            quadrature,
            tolerance,
            passed: (formula - quadrature).abs() <= tolerance,
        }
    }
}

/// Closed-form moments and density normalizations for `n = 2`.
pub fn quadrature_checks() -> Result<Vec<QuadratureCheck>> {
    let mut out = Vec::new();
    for (kind, tol) in [(EnsembleKind::Hs, 1e-10), (EnsembleKind::Bh, 1e-8)] {
        for m in [2usize, 3] {
            let q = two_by_two_moments_by_quadrature(kind, m, 1e-13)?;
            let (first, second) = match kind {
                EnsembleKind::Hs => (mean_sqrt_trace_hs(2, m)?, second_moment_sqrt_trace_hs(2, m)?),
                EnsembleKind::Bh => (mean_sqrt_trace_bh(2, m)?, second_moment_sqrt_trace_bh(2, m)?),
            };
            out.push(QuadratureCheck::new("normalization", kind, m, 1.0, q.mass, 1e-6));
            out.push(QuadratureCheck::new("mean_sqrt_trace", kind, m, first, q.first, tol));
            out.push(QuadratureCheck::new("second_moment_sqrt_trace", kind, m, second, q.second, tol));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub trials: usize,
    pub seed: u64,
    pub haar_moment2: Vec<HaarCheck>,
    pub haar_moment4: Vec<HaarCheck>,
    pub group_integral: Vec<GroupIntegralCheck>,
    pub quadrature: Vec<QuadratureCheck>,
    pub passed: bool,
}

/// Runs every Haar-moment check with `trials` draws and the quadrature
/// oracles. Each check uses its own stream of `seed`.
pub fn run_verification(trials: usize, seed: u64) -> Result<VerificationReport> {
    let mut idx = 0u64;
    let mut next_rng = || {
        idx += 1;
        stream(seed, idx)
    };
    let haar_moment2 = (1..=4)
        .map(|n| verify_haar_moment2(n, trials, &mut next_rng()))
        .collect::<Result<Vec<_>>>()?;
    let haar_moment4 = (2..=4)
        .map(|n| verify_haar_moment4(n, trials, 50, &mut next_rng()))
        .collect::<Result<Vec<_>>>()?;

    let mixed = Spectrum::maximally_mixed(2)?;
    let pure = Spectrum::pure(2)?;
    let sigma = Spectrum::new(SAMPLE_SPECTRUM_N5.to_vec())?;
    let mut rng = next_rng();
    let lambda = random_simplex_point(5, &mut rng)?;
    let group_integral = vec![
        verify_group_integral_fixed(&mixed, &mixed, trials, &mut rng)?,
        verify_group_integral_fixed(&pure, &pure, trials, &mut rng)?,
        verify_group_integral_fixed(&sigma, &lambda, trials, &mut rng)?,
    ];
    let quadrature = quadrature_checks()?;

    let passed = haar_moment2.iter().all(|c| c.passed)
        && haar_moment4.iter().all(|c| c.passed)
        && group_integral.iter().all(|c| c.passed)
        && quadrature.iter().all(|c| c.passed);
    Ok(VerificationReport {
        trials,
        seed,
        haar_moment2,
        haar_moment4,
        group_integral,
        quadrature,
        passed,
    })
}
