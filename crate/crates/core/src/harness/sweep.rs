use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{run_experiment, write_json, ExperimentConfig, MonteCarloStats, ReportFormat};
use crate::ensembles::{EnsembleKind, EnsembleParams, McmcConfig, Spectrum};
use crate::error::{invalid, Result};
use crate::hellinger::{hellinger_summary, Scenario};

/// Tabulates `D_H` statistics over a range of environment dimensions.
///
/// With a fixed spectrum the first ensemble's `m` runs over the range.
/// With two random states `m_1` is held and the second ensemble's `m` runs
/// over the range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub kind_1: EnsembleKind,
    pub kind_2: Option<EnsembleKind>,
    pub fixed_spectrum: Option<Spectrum>,
    pub n: usize,
    pub m_1: usize,
    pub m_from: usize,
    pub m_to: usize,
    /// Zero skips the Monte Carlo columns.
    pub trials: usize,
    pub seed: u64,
    pub mcmc: McmcConfig,
    pub workers: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub m_1: usize,
    pub m_2: Option<usize>,
    pub mean_dh: f64,
    pub var_dh: f64,
    pub monte_carlo: Option<MonteCarloStats>,
}

impl SweepConfig {
    fn scenario(&self, m: usize) -> Result<(Scenario, usize, Option<usize>)> {
        match (&self.fixed_spectrum, self.kind_2) {
            (Some(sigma), None) => Ok((
                Scenario::fixed_vs_random(sigma.clone(), EnsembleParams::new(self.kind_1, self.n, m)?)?,
                m,
                None,
            )),
            (None, Some(k2)) => Ok((
                Scenario::random_vs_random(
                    EnsembleParams::new(self.kind_1, self.n, self.m_1)?,
                    EnsembleParams::new(k2, self.n, m)?,
                )?,
                self.m_1,
                Some(m),
            )),
            _ => Err(invalid("a sweep needs exactly one of a fixed spectrum or a second ensemble")),
        }
    }
}

/// One row per `m` in `m_from..=m_to`; row `i` is simulated with seed
/// `seed + i`.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    if cfg.m_from > cfg.m_to {
        return Err(invalid(format!("empty m range {}..={}", cfg.m_from, cfg.m_to)));
    }
    (cfg.m_from..=cfg.m_to)
        .enumerate()
        .map(|(i, m)| {
            let (scenario, m_1, m_2) = cfg.scenario(m)?;
            let exact = hellinger_summary(&scenario)?;
            let monte_carlo = if cfg.trials > 0 {
                let mut run = ExperimentConfig::new(scenario, cfg.trials, cfg.seed.wrapping_add(i as u64));
                run.mcmc = cfg.mcmc;
                run.workers = cfg.workers;
                Some(run_experiment(&run)?.monte_carlo)
            } else {
                None
            };
            Ok(SweepRow {
                m_1,
                m_2,
                mean_dh: exact.mean_dh,
                var_dh: exact.var_dh,
                monte_carlo,
            })
        })
        .collect()
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.16e}")).unwrap_or_default()
}

pub fn emit_sweep<W: Write + ?Sized>(rows: &[SweepRow], format: ReportFormat, out: &mut W) -> Result<()> {
    match format {
        ReportFormat::Json => write_json(&rows, out),
        ReportFormat::Csv => {
            writeln!(
                out,
                "m1,m2,mean_dh,var_dh,mc_mean_dh,mc_stderr_mean,mc_var_dh,mc_stderr_var,z_mean,z_var"
            )?;
            for r in rows {
                let mc = r.monte_carlo.as_ref();
                writeln!(
                    out,
                    "{},{},{:.16e},{:.16e},{},{},{},{},{},{}",
                    r.m_1,
                    r.m_2.map(|m| m.to_string()).unwrap_or_default(),
                    r.mean_dh,
                    r.var_dh,
                    opt(mc.map(|s| s.mean_dh)),
                    opt(mc.map(|s| s.stderr_mean)),
                    opt(mc.map(|s| s.var_dh)),
                    opt(mc.map(|s| s.stderr_var)),
                    opt(mc.and_then(|s| s.z_mean)),
                    opt(mc.and_then(|s| s.z_var)),
                )?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> SweepConfig {
        SweepConfig {
            kind_1: EnsembleKind::Hs,
            kind_2: Some(EnsembleKind::Bh),
            fixed_spectrum: None,
            n: 3,
            m_1: 4,
            m_from: 3,
            m_to: 6,
            trials: 0,
            seed: 1,
            mcmc: McmcConfig::default(),
            workers: 1,
        }
    }

    #[test]
    fn exact_sweep_rows() {
        let rows = run_sweep(&base()).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0].m_2, Some(3));
        assert!(rows.iter().all(|r| r.monte_carlo.is_none()));
        // a larger environment pushes the state toward maximally mixed
        assert!(rows.windows(2).all(|w| w[1].mean_dh < w[0].mean_dh));
        let mut csv = Vec::new();
        emit_sweep(&rows, ReportFormat::Csv, &mut csv).unwrap();
        assert_eq!(String::from_utf8(csv).unwrap().lines().count(), 5);
    }

    #[test]
    fn invalid_sweeps() {
        let mut c = base();
        c.m_from = 7;
        assert!(run_sweep(&c).is_err());
        let mut c = base();
        c.kind_2 = None;
        assert!(run_sweep(&c).is_err());
        let mut c = base();
        c.m_from = 2;
        assert!(run_sweep(&c).is_err());
    }
}
