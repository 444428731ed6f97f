//! Tanh-sinh quadrature and the `n = 2` eigenvalue-density oracles built on it.
//!
//! Nodes cluster double-exponentially at both ends, so integrable power-law
//! endpoint singularities such as `x^{-1/2}` converge without special
//! treatment. The integrand also receives the distances to both endpoints,
//! computed without cancellation, so `1 - x` stays accurate near `x = 1`.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::ensembles::{log_jpdf_bh, log_jpdf_hs, EnsembleKind, EnsembleParams, Spectrum};
use crate::error::{invalid, Error, Result};

const MAX_LEVEL: u32 = 12;
const T_MAX: f64 = 6.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    /// Difference between the last two refinement levels.
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// `∫_a^b f(x, x - a, b - x) dx` to relative tolerance `tol`.
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64, f64, f64) -> f64,
{
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(invalid(format!("bad integration interval [{a}, {b}]")));
    }
    let half = 0.5 * (b - a);
    let mut evaluations = 0usize;
    // contribution of node t (and its mirror -t), with weights scaled by h later
    let mut node_pair = |t: f64| -> f64 {
        let u = FRAC_PI_2 * t.sinh();
        let cu = u.cosh();
        let w = half * FRAC_PI_2 * t.cosh() / (cu * cu);
        // distances to the nearer endpoint: (b-a)/(1+e^{2u})
        let near = (b - a) / (1.0 + (2.0 * u).exp());
        let far = (b - a) - near;
        let mut s = 0.0;
        for (xa, xb) in [(far, near), (near, far)] {
            if xa <= 0.0 || xb <= 0.0 {
                continue;
            }
            let x = if xa < xb { a + xa } else { b - xb };
            evaluations += 1;
            let v = f(x, xa, xb);
            if v.is_finite() {
                s += w * v;
            }
        }
        if t == 0.0 {
            0.5 * s
        } else {
            s
        }
    };

    let mut h = 1.0;
    let mut sum = 0.0;
    let mut k = 0.0;
    while k <= T_MAX {
        sum += node_pair(k);
        k += h;
    }
    let mut estimate = h * sum;
    for _ in 1..=MAX_LEVEL {
        h *= 0.5;
        let mut t = h;
        while t <= T_MAX {
            sum += node_pair(t);
            t += 2.0 * h;
        }
        let next = h * sum;
        let err = (next - estimate).abs();
        estimate = next;
        if err <= tol * next.abs().max(f64::MIN_POSITIVE) {
            return Ok(QuadResult { value: next, error_estimate: err, evaluations });
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_LEVEL as usize,
        residual: (h * sum - estimate).abs(),
    })
}

/// `∫ p(λ) (sqrt λ + sqrt(1-λ))^k dλ` over `(0, 1)` for `k = 0, 1, 2`, where
/// `p` is the joint eigenvalue density of a 2x2 state from the given
/// ensemble. Entry 0 is the total mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoByTwoMoments {
    pub mass: f64,
    pub first: f64,
    pub second: f64,
}

pub fn two_by_two_moments_by_quadrature(kind: EnsembleKind, m: usize, tol: f64) -> Result<TwoByTwoMoments> {
    let params = EnsembleParams::new(kind, 2, m)?;
    let density = |x: f64, xa: f64, xb: f64| -> f64 {
        let _ = x;
        let spectrum = Spectrum::from_vec_unchecked(vec![xa, xb]);
        let log = match kind {
            EnsembleKind::Hs => log_jpdf_hs(&spectrum, &params),
            EnsembleKind::Bh => log_jpdf_bh(&spectrum, &params),
        };
        log.map(f64::exp).unwrap_or(0.0)
    };
    let moment = |k: i32| {
        tanh_sinh(
            |x, xa, xb| density(x, xa, xb) * (xa.sqrt() + xb.sqrt()).powi(k),
            0.0,
            1.0,
            tol,
        )
        .map(|r| r.value)
    };
    Ok(TwoByTwoMoments {
        mass: moment(0)?,
        first: moment(1)?,
        second: moment(2)?,
    })
}
