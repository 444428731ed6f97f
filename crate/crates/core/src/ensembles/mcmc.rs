//! Metropolis sampler for Bures-Hall spectra.
//!
//! The eigenvalues are treated as a log-gas on the simplex with energy
//! `-2 Σ ln|λ_i - λ_j| + Σ ln(λ_i + λ_j) - (α - 1/2) Σ ln λ_k`. Moves transfer
//! mass between two eigenvalues, so the total is conserved.
//!
//! The state is held in fixed point: eigenvalue `i` is `units[i] / 2^62`
//! with `Σ units = 2^62` exactly. Transfers are integer, so the sum is
//! invariant bitwise along the whole chain.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{EnsembleKind, EnsembleParams, Spectrum};
use crate::error::{invalid, Result};
use crate::stats::integrated_autocorrelation_time;

const TOTAL_UNITS: u64 = 1 << 62;
const UNIT: f64 = 1.0 / TOTAL_UNITS as f64;
const ADAPT_WINDOW: usize = 100;
const ACCEPTANCE_WARN_LOW: f64 = 0.05;
const ACCEPTANCE_WARN_HIGH: f64 = 0.95;

/// Chain schedule. Step-size tuning runs only during burn-in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McmcConfig {
    pub burn_in_sweeps: usize,
    pub thinning_sweeps: usize,
    /// Initial half-width `δ` of the transfer proposal; `None` means `1/(2n)`.
    pub proposal_width: Option<f64>,
    pub target_acceptance: f64,
}

impl Default for McmcConfig {
    fn default() -> Self {
        Self {
            burn_in_sweeps: 5000,
            thinning_sweeps: 10,
            proposal_width: None,
            target_acceptance: 0.3,
        }
    }
}

impl McmcConfig {
    pub fn validate(&self) -> Result<()> {
        if self.burn_in_sweeps == 0 || self.thinning_sweeps == 0 {
            return Err(invalid("burn-in and thinning must each be at least one sweep"));
        }
        if !(self.target_acceptance > 0.0 && self.target_acceptance < 1.0) {
            return Err(invalid(format!(
                "target acceptance {} must lie in (0, 1)",
                self.target_acceptance
            )));
        }
        if let Some(w) = self.proposal_width {
            if !(w > 0.0 && w.is_finite()) {
                return Err(invalid(format!("proposal width {w} must be positive")));
            }
        }
        Ok(())
    }
}

/// Per-chain diagnostics attached to every sampling run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainDiagnostics {
    /// Acceptance rate after burn-in.
    pub acceptance_rate: f64,
    /// Proposal half-width frozen at the end of burn-in.
    pub tuned_step: f64,
    /// Integrated autocorrelation time of `Σ sqrt(λ)` over emitted samples,
    /// in units of emitted samples.
    pub autocorrelation_time: f64,
    pub samples: usize,
    pub warnings: Vec<String>,
}

/// A running Bures-Hall log-gas chain.
#[derive(Debug, Clone)]
pub struct BhChain {
    n: usize,
    exponent: f64,
    cfg: McmcConfig,
    units: Vec<u64>,
    step: f64,
    proposals: u64,
    accepted: u64,
    observable: Vec<f64>,
}

impl BhChain {
    /// Starts a chain and runs its burn-in (with step-size adaptation).
    pub fn new<R: Rng + ?Sized>(params: &EnsembleParams, cfg: McmcConfig, rng: &mut R) -> Result<Self> {
        if params.kind() != EnsembleKind::Bh {
            return Err(invalid(format!("BH chain requested for {params}")));
        }
        cfg.validate()?;
        let n = params.n();
        // distinct starting point, weights proportional to 1..=n
        let weight_total = (n * (n + 1) / 2) as u64;
        let mut units: Vec<u64> = (1..=n as u64).map(|w| TOTAL_UNITS / weight_total * w).collect();
        let assigned: u64 = units.iter().sum();
        units[n - 1] += TOTAL_UNITS - assigned;

        let mut chain = Self {
            n,
            exponent: params.alpha() as f64 - 0.5,
            cfg,
            units,
            step: cfg.proposal_width.unwrap_or(1.0 / (2.0 * n as f64)),
            proposals: 0,
            accepted: 0,
            observable: Vec::new(),
        };
        if n > 1 {
            chain.burn_in(rng);
        }
        Ok(chain)
    }

    fn proposals_per_sweep(&self) -> usize {
        (self.n * (self.n - 1) / 2).max(1)
    }

    fn burn_in<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let total = self.cfg.burn_in_sweeps * self.proposals_per_sweep();
        let mut window_accepts = 0usize;
        for k in 1..=total {
            if self.propose(rng) {
                window_accepts += 1;
            }
            if k % ADAPT_WINDOW == 0 {
                let rate = window_accepts as f64 / ADAPT_WINDOW as f64;
                self.step = (self.step * (rate - self.cfg.target_acceptance).exp()).clamp(1e-12, 1.0);
                window_accepts = 0;
            }
        }
        self.proposals = 0;
        self.accepted = 0;
    }

    #[inline]
    fn lambda(&self, i: usize) -> f64 {
        self.units[i] as f64 * UNIT
    }

    /// `2 ln|x - y| - ln(x + y)` from fixed-point units.
    #[inline]
    fn pair(a: u64, b: u64) -> f64 {
        let diff = a.abs_diff(b) as f64 * UNIT;
        2.0 * diff.ln() - ((a + b) as f64 * UNIT).ln()
    }

    /// One Metropolis transfer move; returns whether it was accepted.
    fn propose<R: Rng + ?Sized>(&mut self, rng: &mut R) -> bool {
        let n = self.n;
        self.proposals += 1;
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let eps: f64 = rng.random_range(-self.step..self.step);
        let shift = (eps * TOTAL_UNITS as f64).round() as i64;
        let (ui, uj) = (self.units[i] as i64, self.units[j] as i64);
        let (new_i, new_j) = (ui - shift, uj + shift);
        if shift == 0 || new_i <= 0 || new_j <= 0 {
            return false;
        }
        let (new_i, new_j) = (new_i as u64, new_j as u64);
        if new_i == new_j {
            // coinciding eigenvalues: zero density
            return false;
        }
        let (old_i, old_j) = (self.units[i], self.units[j]);

        let mut delta = 0.0;
        for k in 0..n {
            if k == i || k == j {
                continue;
            }
            let uk = self.units[k];
            delta += Self::pair(new_i, uk) - Self::pair(old_i, uk) + Self::pair(new_j, uk) - Self::pair(old_j, uk);
        }
        // λ_i + λ_j is unchanged, so only the repulsion part of the (i, j) pair moves
        delta += 2.0 * ((new_i.abs_diff(new_j) as f64).ln() - (old_i.abs_diff(old_j) as f64).ln());
        delta += self.exponent
            * ((new_i as f64).ln() + (new_j as f64).ln() - (old_i as f64).ln() - (old_j as f64).ln());

        if delta >= 0.0 || rng.random::<f64>().ln() < delta {
            self.units[i] = new_i;
            self.units[j] = new_j;
            self.accepted += 1;
            true
        } else {
            false
        }
    }

    /// Advances by `thinning_sweeps` sweeps and emits the current spectrum.
    pub fn next_spectrum<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Spectrum {
        if self.n > 1 {
            for _ in 0..self.cfg.thinning_sweeps * self.proposals_per_sweep() {
                self.propose(rng);
            }
        }
        let values: Vec<f64> = (0..self.n).map(|i| self.lambda(i)).collect();
        let s = Spectrum::from_vec_unchecked(values);
        self.observable.push(s.sqrt_trace());
        s
    }

    /// Exact fixed-point total of the state; always `2^62`.
    pub fn total_units(&self) -> u64 {
        self.units.iter().sum()
    }

    pub fn diagnostics(&self) -> ChainDiagnostics {
        let acceptance_rate = if self.proposals > 0 {
            self.accepted as f64 / self.proposals as f64
        } else if self.n == 1 {
            1.0
        } else {
            0.0
        };
        let mut warnings = Vec::new();
        if self.n > 1 && self.proposals > 0 && !(ACCEPTANCE_WARN_LOW..=ACCEPTANCE_WARN_HIGH).contains(&acceptance_rate) {
            warnings.push(format!(
                "acceptance rate {acceptance_rate:.3} outside [{ACCEPTANCE_WARN_LOW}, {ACCEPTANCE_WARN_HIGH}]"
            ));
        }
        ChainDiagnostics {
            acceptance_rate,
            tuned_step: self.step,
            autocorrelation_time: integrated_autocorrelation_time(&self.observable),
            samples: self.observable.len(),
            warnings,
        }
    }
}

/// Draws `count` Bures-Hall spectra from one chain. `n = 1` yields the
/// deterministic spectrum `(1)`.
pub fn sample_bh_spectrum_mcmc<R: Rng + ?Sized>(
    params: &EnsembleParams,
    cfg: McmcConfig,
    count: usize,
    rng: &mut R,
) -> Result<(Vec<Spectrum>, ChainDiagnostics)> {
    if count == 0 {
        return Err(invalid("sample count must be positive"));
    }
    let mut chain = BhChain::new(params, cfg, rng)?;
    let samples = (0..count).map(|_| chain.next_spectrum(rng)).collect();
    Ok((samples, chain.diagnostics()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn bh(n: usize, m: usize) -> EnsembleParams {
        EnsembleParams::new(EnsembleKind::Bh, n, m).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(McmcConfig::default().validate().is_ok());
        let bad = McmcConfig { burn_in_sweeps: 0, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = McmcConfig { target_acceptance: 1.0, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = McmcConfig { proposal_width: Some(-0.1), ..Default::default() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn rejects_zero_count_and_wrong_kind() {
        let mut rng = seeded(1);
        assert!(sample_bh_spectrum_mcmc(&bh(2, 2), McmcConfig::default(), 0, &mut rng).is_err());
        let hs = EnsembleParams::new(EnsembleKind::Hs, 2, 2).unwrap();
        assert!(sample_bh_spectrum_mcmc(&hs, McmcConfig::default(), 5, &mut rng).is_err());
    }

    #[test]
    fn scalar_case_is_deterministic() {
        let mut rng = seeded(2);
        let (s, d) = sample_bh_spectrum_mcmc(&bh(1, 4), McmcConfig::default(), 10, &mut rng).unwrap();
        assert!(s.iter().all(|x| x.values() == [1.0]));
        assert!(d.warnings.is_empty());
    }

    #[test]
    fn sum_is_invariant_along_the_chain() {
        let mut rng = seeded(3);
        let cfg = McmcConfig { burn_in_sweeps: 200, ..Default::default() };
        let mut chain = BhChain::new(&bh(3, 3), cfg, &mut rng).unwrap();
        for _ in 0..2000 {
            let s = chain.next_spectrum(&mut rng);
            assert_eq!(chain.total_units(), TOTAL_UNITS);
            assert!((s.values().iter().sum::<f64>() - 1.0).abs() < 1e-15);
            assert!(s.values().iter().all(|&x| x > 0.0 && x < 1.0));
        }
    }

    #[test]
    fn step_tuning_reaches_reasonable_acceptance() {
        let mut rng = seeded(4);
        let (_, d) = sample_bh_spectrum_mcmc(&bh(5, 10), McmcConfig::default(), 2000, &mut rng).unwrap();
        assert!((0.15..0.5).contains(&d.acceptance_rate), "{d:?}");
        assert!(d.warnings.is_empty());
    }
}
