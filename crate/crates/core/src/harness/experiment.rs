//! Seeded Monte Carlo sampling of `D_H` for a scenario.
//!
//! Trials are split into contiguous blocks, one per worker. Worker `w` draws
//! Ginibre and Haar matrices from stream `4w` of the seed and runs its
//! Bures-Hall chains on streams `4w + 1` and `4w + 2`. Samples are
//! concatenated in worker order before reduction, so a run is a pure
//! function of `(config, seed, workers)`.

use std::thread;

use serde::{Deserialize, Serialize};

use super::Histogram;
use crate::ensembles::{
    assemble_sqrt_from_spectrum, sample_hs_density, BhChain, ChainDiagnostics, EnsembleKind, EnsembleParams,
    McmcConfig,
};
use crate::error::{invalid, Error, Result};
use crate::hellinger::{hellinger_summary, HellingerSummary, Scenario};
use crate::numlinalg::{affinity_from_roots, ComplexMatrix};
use crate::rng::{stream, SimRng};
use crate::stats::{z_score, SampleMoments};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    pub trials: usize,
    pub seed: u64,
    /// Used only for Bures-Hall states.
    pub mcmc: McmcConfig,
    pub histogram_bins: usize,
    pub workers: usize,
}

impl ExperimentConfig {
    pub fn new(scenario: Scenario, trials: usize, seed: u64) -> Self {
        Self {
            scenario,
            trials,
            seed,
            mcmc: McmcConfig::default(),
            histogram_bins: 50,
            workers: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials < 2 {
            return Err(invalid(format!(
                "need at least 2 trials for a sample variance, got {}",
                self.trials
            )));
        }
        if self.histogram_bins < 2 {
            return Err(invalid(format!(
                "need at least 2 histogram bins, got {}",
                self.histogram_bins
            )));
        }
        if self.workers == 0 || self.workers > self.trials {
            return Err(invalid(format!(
                "worker count {} must lie in 1..={}",
                self.workers, self.trials
            )));
        }
        if self.uses_mcmc() {
            self.mcmc.validate()?;
        }
        Ok(())
    }

    fn uses_mcmc(&self) -> bool {
        self.scenario.ensemble_1().kind() == EnsembleKind::Bh
            || self.scenario.ensemble_2().is_some_and(|p| p.kind() == EnsembleKind::Bh)
    }
}

/// Run parameters echoed into the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunParams {
    pub trials: usize,
    pub seed: u64,
    pub workers: usize,
    pub histogram_bins: usize,
    /// Present when a Bures-Hall chain was run.
    pub mcmc: Option<McmcConfig>,
}

/// Sample statistics of `D_H` and their z-scores against the exact values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloStats {
    pub trials: usize,
    pub mean_dh: f64,
    pub var_dh: f64,
    pub stderr_mean: f64,
    pub stderr_var: f64,
    /// `None` when the corresponding standard error is zero.
    pub z_mean: Option<f64>,
    pub z_var: Option<f64>,
}

/// Diagnostics of one Bures-Hall chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub worker: usize,
    /// 1 or 2: which state of the scenario the chain feeds.
    pub state: usize,
    pub diagnostics: ChainDiagnostics,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RunDiagnostics {
    pub chains: Vec<ChainReport>,
    pub warnings: Vec<String>,
}

/// Everything a `simulate` run produces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub scenario: Scenario,
    pub params: RunParams,
    pub exact: HellingerSummary,
    pub monte_carlo: MonteCarloStats,
    pub diagnostics: RunDiagnostics,
    pub histogram: Histogram,
}

#[allow(clippy::large_enum_variant)]
enum StateSource {
    Hs(EnsembleParams),
    Bh { chain: BhChain, rng: SimRng },
}

impl StateSource {
    fn new(params: &EnsembleParams, mcmc: McmcConfig, mut chain_rng: SimRng) -> Result<Self> {
        Ok(match params.kind() {
            EnsembleKind::Hs => StateSource::Hs(*params),
            EnsembleKind::Bh => StateSource::Bh {
                chain: BhChain::new(params, mcmc, &mut chain_rng)?,
                rng: chain_rng,
            },
        })
    }

    /// `sqrt ρ` of a fresh draw.
    fn sqrt_state(&mut self, rng: &mut SimRng) -> Result<ComplexMatrix> {
        match self {
            StateSource::Hs(p) => sample_hs_density(p, rng)?.sqrt(),
            StateSource::Bh { chain, rng: chain_rng } => {
                let spectrum = chain.next_spectrum(chain_rng);
                assemble_sqrt_from_spectrum(&spectrum, rng)
            }
        }
    }

    fn diagnostics(&self) -> Option<ChainDiagnostics> {
        match self {
            StateSource::Hs(_) => None,
            StateSource::Bh { chain, .. } => Some(chain.diagnostics()),
        }
    }
}

struct WorkerOutput {
    samples: Vec<f64>,
    chains: Vec<ChainReport>,
}

fn run_worker(cfg: &ExperimentConfig, worker: usize, trials: usize) -> Result<WorkerOutput> {
    let base = 4 * worker as u64;
    let mut rng = stream(cfg.seed, base);
    let scenario = &cfg.scenario;
    let mut first = StateSource::new(scenario.ensemble_1(), cfg.mcmc, stream(cfg.seed, base + 1))?;
    let mut second = match scenario.ensemble_2() {
        Some(p2) => Some(StateSource::new(p2, cfg.mcmc, stream(cfg.seed, base + 2))?),
        None => None,
    };
    let fixed_root = scenario.fixed_spectrum().map(|s| {
        let roots: Vec<f64> = s.values().iter().map(|x| x.sqrt()).collect();
        ComplexMatrix::from_real_diagonal(&roots)
    });

    let mut samples = Vec::with_capacity(trials);
    for _ in 0..trials {
        let r1 = first.sqrt_state(&mut rng)?;
        let a = match (&fixed_root, second.as_mut()) {
            (Some(root), _) => affinity_from_roots(&r1, root)?,
            (None, Some(src)) => affinity_from_roots(&r1, &src.sqrt_state(&mut rng)?)?,
            (None, None) => return Err(invalid("scenario has neither a fixed state nor a second ensemble")),
        };
        samples.push(2.0 - 2.0 * a);
    }

    let mut chains = Vec::new();
    for (state, src) in [(1, Some(&first)), (2, second.as_ref())] {
        if let Some(d) = src.and_then(StateSource::diagnostics) {
            chains.push(ChainReport { worker, state, diagnostics: d });
        }
    }
    Ok(WorkerOutput { samples, chains })
}

/// Block sizes for `workers` workers: the first `trials % workers` get one extra.
fn partition(trials: usize, workers: usize) -> Vec<usize> {
    (0..workers)
        .map(|w| trials / workers + usize::from(w < trials % workers))
        .collect()
}

/// Raw `D_H` samples plus chain reports, in deterministic worker order.
pub fn sample_dh(cfg: &ExperimentConfig) -> Result<(Vec<f64>, Vec<ChainReport>)> {
    cfg.validate()?;
    let blocks = partition(cfg.trials, cfg.workers);
    let outputs: Vec<Result<WorkerOutput>> = if cfg.workers == 1 {
        vec![run_worker(cfg, 0, blocks[0])]
    } else {
        thread::scope(|s| {
            let handles: Vec<_> = blocks
                .iter()
                .enumerate()
                .map(|(w, &t)| s.spawn(move || run_worker(cfg, w, t)))
                .collect();
            handles
                .into_iter()
                .map(|h| {
                    h.join()
                        .unwrap_or_else(|_| Err(Error::Consistency("worker thread panicked".into())))
                })
                .collect()
        })
    };
    let mut samples = Vec::with_capacity(cfg.trials);
    let mut chains = Vec::new();
    for out in outputs {
        let out = out?;
        samples.extend(out.samples);
        chains.extend(out.chains);
    }
    Ok((samples, chains))
}

/// Samples `D_H`, compares with the exact summary and bins the result.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<StatsReport> {
    let exact = hellinger_summary(&cfg.scenario)?;
    let (samples, chains) = sample_dh(cfg)?;
    let moments = SampleMoments::from_samples(&samples).expect("validated trials >= 2");

    let monte_carlo = MonteCarloStats {
        trials: moments.count,
        mean_dh: moments.mean,
        var_dh: moments.var,
        stderr_mean: moments.stderr_mean,
        stderr_var: moments.stderr_var,
        z_mean: z_score(moments.mean, exact.mean_dh, moments.stderr_mean),
        z_var: z_score(moments.var, exact.var_dh, moments.stderr_var),
    };

    let mut histogram = Histogram::from_samples(&samples, cfg.histogram_bins)?;
    if let Some(fit) = exact.gamma_fit() {
        histogram.attach_gamma(&fit)?;
    }

    let warnings = chains
        .iter()
        .flat_map(|c| {
            c.diagnostics
                .warnings
                .iter()
                .map(move |w| format!("worker {} chain {}: {w}", c.worker, c.state))
        })
        .collect();

    Ok(StatsReport {
        scenario: cfg.scenario.clone(),
        params: RunParams {
            trials: cfg.trials,
            seed: cfg.seed,
            workers: cfg.workers,
            histogram_bins: cfg.histogram_bins,
            mcmc: cfg.uses_mcmc().then_some(cfg.mcmc),
        },
        exact,
        monte_carlo,
        diagnostics: RunDiagnostics { chains, warnings },
        histogram,
    })
}
