//! Monte Carlo checks of the Haar-unitary moment integrals that the exact
//! statistics rely on.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::ensembles::Spectrum;
use crate::error::{invalid, Result};
use crate::exactmoments::WeingartenConstants;
use crate::numlinalg::{sample_haar_unitary, ComplexMatrix};

/// Outcome of one Haar-moment check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HaarCheck {
    pub name: String,
    pub n: usize,
    pub trials: usize,
    pub tuples: usize,
    /// Largest `|estimate - exact|` over the checked tuples.
    pub max_abs_deviation: f64,
    /// Largest deviation in units of its standard error (0 when every
    /// checked integrand is constant).
    pub max_sigma: f64,
    /// Acceptance bound applied to the deviation (absolute or in sigmas, per
    /// check).
    pub threshold: f64,
    pub passed: bool,
}

/// `∫ U_ij conj(U_kl) dU = δ_ik δ_jl / n` for every index tuple, accepted
/// when the largest deviation is below `3 / sqrt(trials)`.
pub fn verify_haar_moment2<R: Rng + ?Sized>(n: usize, trials: usize, rng: &mut R) -> Result<HaarCheck> {
    if n == 0 || trials < 2 {
        return Err(invalid("Haar moment check needs n >= 1 and at least two trials"));
    }
    let n2 = n * n;
    let mut sum = vec![Complex64::new(0.0, 0.0); n2 * n2];
    let mut sum_sq = vec![0.0f64; n2 * n2];
    for _ in 0..trials {
        let u = sample_haar_unitary(n, rng)?;
        let flat = u.as_slice();
        for a in 0..n2 {
            for b in 0..n2 {
                let x = flat[a] * flat[b].conj();
                sum[a * n2 + b] += x;
                sum_sq[a * n2 + b] += x.norm_sqr();
            }
        }
    }
    let wg1 = 1.0 / n as f64;
    let tf = trials as f64;
    let mut max_dev = 0.0f64;
    let mut max_sigma = 0.0f64;
    for a in 0..n2 {
        for b in 0..n2 {
            let exact = if a == b { wg1 } else { 0.0 };
            let mean = sum[a * n2 + b] / tf;
            let dev = (mean - Complex64::new(exact, 0.0)).norm();
            max_dev = max_dev.max(dev);
            max_sigma = max_sigma.max(sigmas(dev, sum_sq[a * n2 + b] / tf - mean.norm_sqr(), tf));
        }
    }
    let threshold = 3.0 / tf.sqrt();
    Ok(HaarCheck {
        name: "haar_moment2".into(),
        n,
        trials,
        tuples: n2 * n2,
        max_abs_deviation: max_dev,
        max_sigma,
        threshold,
        passed: max_dev < threshold,
    })
}

fn sigmas(dev: f64, var: f64, trials: f64) -> f64 {
    let se = (var.max(0.0) / trials).sqrt();
    if se > 0.0 {
        dev / se
    } else if dev > 1e-12 {
        f64::INFINITY
    } else {
        0.0
    }
}

/// Index tuple `(i, j, k, l, p, q, r, s)` of `U_ij U_kl conj(U_pq) conj(U_rs)`.
pub type FourTuple = [usize; 8];

/// `∫ U_ij U_kl conj(U_pq) conj(U_rs) dU`:
/// `Wg(1,1) (δ_ip δ_jq δ_kr δ_ls + δ_ir δ_js δ_kp δ_lq)
///  + Wg(2) (δ_ip δ_js δ_kr δ_lq + δ_ir δ_jq δ_kp δ_ls)`.
pub fn haar_moment4_exact(wg: &WeingartenConstants, t: FourTuple) -> f64 {
    let [i, j, k, l, p, q, r, s] = t;
    let d = |a: usize, b: usize| a == b;
    let mut v = 0.0;
    if d(i, p) && d(j, q) && d(k, r) && d(l, s) {
        v += wg.wg11;
    }
    if d(i, r) && d(j, s) && d(k, p) && d(l, q) {
        v += wg.wg11;
    }
    if d(i, p) && d(j, s) && d(k, r) && d(l, q) {
        v += wg.wg2;
    }
    if d(i, r) && d(j, q) && d(k, p) && d(l, s) {
        v += wg.wg2;
    }
    v
}

/// Every tuple for `n = 2`; for larger `n`, `sampled` tuples of which half
/// are uniform and half are built to satisfy one of the delta patterns.
pub fn moment4_tuples<R: Rng + ?Sized>(n: usize, sampled: usize, rng: &mut R) -> Vec<FourTuple> {
    if n <= 2 {
        let total = n.pow(8);
        return (0..total)
            .map(|mut c| {
                let mut t = [0usize; 8];
                for slot in t.iter_mut() {
                    *slot = c % n;
                    c /= n;
                }
                t
            })
            .collect();
    }
    let mut out = Vec::with_capacity(sampled);
    for idx in 0..sampled {
        let mut t = [0usize; 8];
        for slot in t.iter_mut() {
            *slot = rng.random_range(0..n);
        }
        if idx % 2 == 1 {
            let [i, j, k, l, ..] = t;
            let tail = match rng.random_range(0..4) {
                0 => [i, j, k, l],
                1 => [k, l, i, j],
                2 => [i, l, k, j],
                _ => [k, j, i, l],
            };
            t[4..].copy_from_slice(&tail);
        }
        out.push(t);
    }
    out
}

/// Fourth-order Haar moments against [`haar_moment4_exact`]; each tuple
/// must lie within 3 standard errors of its exact value.
pub fn verify_haar_moment4<R: Rng + ?Sized>(
    n: usize,
    trials: usize,
    sampled_tuples: usize,
    rng: &mut R,
) -> Result<HaarCheck> {
    if trials < 2 {
        return Err(invalid("Haar moment check needs at least two trials"));
    }
    let wg = WeingartenConstants::new(n)?;
    let tuples = moment4_tuples(n, sampled_tuples, rng);
    let mut sum = vec![Complex64::new(0.0, 0.0); tuples.len()];
    let mut sum_sq = vec![0.0f64; tuples.len()];
    for _ in 0..trials {
        let u = sample_haar_unitary(n, rng)?;
        for (idx, t) in tuples.iter().enumerate() {
            let x = u[(t[0], t[1])] * u[(t[2], t[3])] * (u[(t[4], t[5])] * u[(t[6], t[7])]).conj();
            sum[idx] += x;
            sum_sq[idx] += x.norm_sqr();
        }
    }
    let tf = trials as f64;
    let mut max_dev = 0.0f64;
    let mut max_sigma = 0.0f64;
    for (idx, t) in tuples.iter().enumerate() {
        let mean = sum[idx] / tf;
        let dev = (mean - Complex64::new(haar_moment4_exact(&wg, *t), 0.0)).norm();
        max_dev = max_dev.max(dev);
        max_sigma = max_sigma.max(sigmas(dev, sum_sq[idx] / tf - mean.norm_sqr(), tf));
    }
    Ok(HaarCheck {
        name: "haar_moment4".into(),
        n,
        trials,
        tuples: tuples.len(),
        max_abs_deviation: max_dev,
        max_sigma,
        threshold: 3.0,
        passed: max_sigma < 3.0,
    })
}

/// `∫ [tr(U sqrt Λ U† sqrt σ)]^2 dU
///   = Wg(1,1) [(Σ sqrt λ)^2 (tr sqrt σ)^2 + 1] + Wg(2) [(tr sqrt σ)^2 + (Σ sqrt λ)^2]`.
pub fn group_integral_fixed_exact(sigma: &Spectrum, spectrum: &Spectrum) -> Result<f64> {
    if sigma.len() != spectrum.len() {
        return Err(invalid("group integral needs spectra of equal dimension"));
    }
    let n = sigma.len();
    if n == 1 {
        return Ok(1.0);
    }
    let wg = WeingartenConstants::new(n)?;
    let t2 = sigma.sqrt_trace().powi(2);
    let l2 = spectrum.sqrt_trace().powi(2);
    Ok(wg.wg11 * (l2 * t2 + 1.0) + wg.wg2 * (t2 + l2))
}

const CONSTANT_TOL: f64 = 1e-12;

/// Outcome of [`verify_group_integral_fixed`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupIntegralCheck {
    pub n: usize,
    pub trials: usize,
    pub exact: f64,
    pub estimate: f64,
    pub stderr: f64,
    /// `None` when the integrand is constant.
    pub z: Option<f64>,
    pub passed: bool,
}

/// Monte Carlo of `[tr(U sqrt Λ U† sqrt σ)]^2` over Haar `U` against
/// [`group_integral_fixed_exact`], accepted within 3 standard errors.
pub fn verify_group_integral_fixed<R: Rng + ?Sized>(
    sigma: &Spectrum,
    spectrum: &Spectrum,
    trials: usize,
    rng: &mut R,
) -> Result<GroupIntegralCheck> {
    if trials < 2 {
        return Err(invalid("group integral check needs at least two trials"));
    }
    let exact = group_integral_fixed_exact(sigma, spectrum)?;
    let n = sigma.len();
    let root_sigma: Vec<f64> = sigma.values().iter().map(|x| x.sqrt()).collect();
    let root_lambda: Vec<f64> = spectrum.values().iter().map(|x| x.sqrt()).collect();
    let mut samples = Vec::with_capacity(trials);
    for _ in 0..trials {
        // sqrt σ is diagonal: tr(U D U† S) = Σ_i S_i Σ_k |U_ik|^2 D_k
        let u: ComplexMatrix = sample_haar_unitary(n, rng)?;
        let mut a = 0.0;
        for i in 0..n {
            let mut row = 0.0;
            for k in 0..n {
                row += u[(i, k)].norm_sqr() * root_lambda[k];
            }
            a += root_sigma[i] * row;
        }
        samples.push(a * a);
    }
    let moments = crate::stats::SampleMoments::from_samples(&samples).expect("at least two samples");
    // a constant integrand leaves only rounding noise in the standard error
    let z = if moments.stderr_mean <= CONSTANT_TOL * exact.abs().max(1.0) {
        None
    } else {
        crate::stats::z_score(moments.mean, exact, moments.stderr_mean)
    };
    let passed = match z {
        Some(z) => z.abs() < 3.0,
        None => (moments.mean - exact).abs() < CONSTANT_TOL * exact.abs().max(1.0),
    };
    Ok(GroupIntegralCheck {
        n,
        trials,
        exact,
        estimate: moments.mean,
        stderr: moments.stderr_mean,
        z,
        passed,
    })
}
