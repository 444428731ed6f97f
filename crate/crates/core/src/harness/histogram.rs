use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::hellinger::GammaFit;

/// Equal-width histogram over `[min, max]` of the samples, normalized to a
/// probability density.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    /// `bins + 1` edges.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// `count / (trials * width)`.
    pub density: Vec<f64>,
    /// Gamma overlay at bin midpoints.
    pub gamma_density: Option<Vec<f64>>,
    /// Total variation distance between the binned samples and the gamma law,
    /// including the gamma mass outside the histogram range.
    pub gamma_tv_distance: Option<f64>,
}

impl Histogram {
    pub fn from_samples(samples: &[f64], bins: usize) -> Result<Self> {
        if bins < 2 {
            return Err(invalid(format!("histogram needs at least 2 bins, got {bins}")));
        }
        if samples.is_empty() {
            return Err(invalid("histogram of an empty sample"));
        }
        if samples.iter().any(|x| !x.is_finite()) {
            return Err(invalid("histogram of non-finite samples"));
        }
        let lo = samples.iter().copied().fold(f64::INFINITY, f64::min);
        let mut hi = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if hi <= lo {
            hi = lo + 1.0;
        }
        let width = (hi - lo) / bins as f64;
        let mut edges: Vec<f64> = (0..bins).map(|i| lo + i as f64 * width).collect();
        edges.push(hi);
        let mut counts = vec![0u64; bins];
        for &x in samples {
            let idx = (((x - lo) / width) as usize).min(bins - 1);
            counts[idx] += 1;
        }
        let total = samples.len() as f64;
        let density = counts
            .iter()
            .zip(edges.windows(2))
            .map(|(&c, e)| c as f64 / (total * (e[1] - e[0])))
            .collect();
        Ok(Self {
            edges,
            counts,
            density,
            gamma_density: None,
            gamma_tv_distance: None,
        })
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn midpoints(&self) -> impl Iterator<Item = f64> + '_ {
        self.edges.windows(2).map(|e| 0.5 * (e[0] + e[1]))
    }

    /// `Σ density * width`; 1 up to rounding.
    pub fn integral(&self) -> f64 {
        self.density
            .iter()
            .zip(self.edges.windows(2))
            .map(|(d, e)| d * (e[1] - e[0]))
            .sum()
    }

    /// `½ Σ |count/N - ΔF| + ½ (F(lo) + 1 - F(hi))` for the gamma CDF `F`.
    pub fn gamma_tv(&self, fit: &GammaFit) -> Result<f64> {
        let total = self.total() as f64;
        let lo = self.edges[0];
        let hi = *self.edges.last().expect("edges are never empty");
        let mut tv = fit.cdf(lo)? + 1.0 - fit.cdf(hi)?;
        let mut prev = fit.cdf(lo)?;
        for (i, &c) in self.counts.iter().enumerate() {
            let next = fit.cdf(self.edges[i + 1])?;
            tv += (c as f64 / total - (next - prev)).abs();
            prev = next;
        }
        Ok(0.5 * tv)
    }

    /// Fills the gamma overlay and its total variation distance.
    pub fn attach_gamma(&mut self, fit: &GammaFit) -> Result<()> {
        let overlay = self.midpoints().map(|x| fit.pdf(x.max(0.0))).collect::<Result<Vec<_>>>()?;
        self.gamma_tv_distance = Some(self.gamma_tv(fit)?);
        self.gamma_density = Some(overlay);
        Ok(())
    }
}
