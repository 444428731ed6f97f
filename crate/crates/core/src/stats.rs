//! Sample statistics shared by the samplers and the experiment harness.

use serde::{Deserialize, Serialize};

/// Pairwise (cascade) summation. The result depends only on the order of
/// `xs`, never on how the work was split.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const BLOCK: usize = 128;
    if xs.len() <= BLOCK {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Mean, unbiased variance and fourth central moment with their standard
/// errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleMoments {
    pub count: usize,
    pub mean: f64,
    /// Unbiased sample variance `s^2`.
    pub var: f64,
    /// Fourth central sample moment `m4`.
    pub m4: f64,
    /// `s / sqrt(count)`.
    pub stderr_mean: f64,
    /// `sqrt((m4 - s^4) / count)`.
    pub stderr_var: f64,
}

impl SampleMoments {
    /// Two-pass moments; `None` for fewer than two samples.
    pub fn from_samples(xs: &[f64]) -> Option<Self> {
        let count = xs.len();
        if count < 2 {
            return None;
        }
        let nf = count as f64;
        let mean = pairwise_sum(xs) / nf;
        let mut dev2 = Vec::with_capacity(count);
        let mut dev4 = Vec::with_capacity(count);
        for &x in xs {
            let d2 = (x - mean) * (x - mean);
            dev2.push(d2);
            dev4.push(d2 * d2);
        }
        let ss = pairwise_sum(&dev2);
        let var = ss / (nf - 1.0);
        let m4 = pairwise_sum(&dev4) / nf;
        let stderr_mean = (var / nf).sqrt();
        let stderr_var = ((m4 - var * var).max(0.0) / nf).sqrt();
        Some(Self {
            count,
            mean,
            var,
            m4,
            stderr_mean,
            stderr_var,
        })
    }
}

/// `(estimate - reference) / stderr`; `None` when the standard error
/// vanishes (a degenerate, constant sample).
pub fn z_score(estimate: f64, reference: f64, stderr: f64) -> Option<f64> {
    if stderr > 0.0 && stderr.is_finite() {
        Some((estimate - reference) / stderr)
    } else {
        None
    }
}

/// Integrated autocorrelation time `1 + 2 Σ ρ(t)` with Sokal's automatic
/// window (`W >= 5 τ(W)`). Returns 1 for constant or very short series.
pub fn integrated_autocorrelation_time(series: &[f64]) -> f64 {
    let n = series.len();
    if n < 4 {
        return 1.0;
    }
    let mean = pairwise_sum(series) / n as f64;
    let centered: Vec<f64> = series.iter().map(|x| x - mean).collect();
    let c0 = centered.iter().map(|x| x * x).sum::<f64>() / n as f64;
    if c0 <= 0.0 {
        return 1.0;
    }
    let max_lag = (n / 2).min(5000);
    let mut tau = 1.0;
    for lag in 1..max_lag {
        let c: f64 = centered[..n - lag]
            .iter()
            .zip(&centered[lag..])
            .map(|(a, b)| a * b)
            .sum::<f64>()
            / n as f64;
        tau += 2.0 * c / c0;
        if lag as f64 >= 5.0 * tau {
            break;
        }
    }
    tau.max(1.0)
}

/// Asymptotic Kolmogorov survival function `Q(λ) = 2 Σ (-1)^{k-1} e^{-2 k² λ²}`.
pub fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * lambda * lambda).exp();
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-17 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Result of a Kolmogorov-Smirnov test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
}

fn ks_p_value(d: f64, effective_n: f64) -> f64 {
    let sn = effective_n.sqrt();
    kolmogorov_survival((sn + 0.12 + 0.11 / sn) * d)
}

/// Two-sample KS test on the empirical CDFs of `a` and `b`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> KsResult {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    KsResult {
        statistic: d,
        p_value: ks_p_value(d, na * nb / (na + nb)),
    }
}

/// One-sample KS test of `samples` against a continuous CDF.
pub fn ks_one_sample(samples: &[f64], cdf: impl Fn(f64) -> f64) -> KsResult {
    let mut s = samples.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in s.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    KsResult {
        statistic: d,
        p_value: ks_p_value(d, n),
    }
}
