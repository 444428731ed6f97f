//! Command-line front end: exact statistics, simulations, verification
//! checks and parameter sweeps.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use hellinger_core::ensembles::{EnsembleKind, EnsembleParams, McmcConfig, Spectrum};
use hellinger_core::harness::{
    emit_report, emit_sweep, run_experiment, run_sweep, run_verification, write_json, ExperimentConfig,
    ReportFormat, SweepConfig,
};
use hellinger_core::hellinger::{hellinger_summary, HellingerSummary, Scenario};
use hellinger_core::{Error, Result};

#[derive(Parser)]
#[command(name = "hellinger", version, about = "Squared Hellinger distance statistics for random density matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact mean, variance and gamma fit of D_H.
    Exact {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sample D_H by Monte Carlo and compare with the exact statistics.
    Simulate {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 1_000_000)]
        trials: usize,
        #[arg(long, default_value_t = 50)]
        bins: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check Haar moment identities and the closed forms against quadrature.
    Verify {
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate D_H statistics over a range of environment dimensions.
    Sweep {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        m_from: usize,
        #[arg(long)]
        m_to: usize,
        /// Monte Carlo trials per row; 0 tabulates exact values only.
        #[arg(long, default_value_t = 0)]
        trials: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct ScenarioArgs {
    /// Ensemble of the (first) random state.
    #[arg(long, default_value = "hs")]
    ensemble: EnsembleKind,
    /// Ensemble of the second random state; defaults to --ensemble when --m2 is given.
    #[arg(long)]
    ensemble2: Option<EnsembleKind>,
    /// Dimension of both states.
    #[arg(long)]
    n: usize,
    /// Environment dimension of the first state (defaults to n).
    #[arg(long)]
    m: Option<usize>,
    /// Environment dimension of the second state (defaults to m).
    #[arg(long)]
    m2: Option<usize>,
    /// Eigenvalues of a fixed second state, comma separated.
    #[arg(long, conflicts_with_all = ["ensemble2", "m2"])]
    fixed_spectrum: Option<Spectrum>,
}

impl ScenarioArgs {
    fn m(&self) -> usize {
        self.m.unwrap_or(self.n)
    }

    fn scenario(&self) -> Result<Scenario> {
        let p1 = EnsembleParams::new(self.ensemble, self.n, self.m())?;
        match (&self.fixed_spectrum, self.ensemble2, self.m2) {
            (Some(sigma), ..) => Scenario::fixed_vs_random(sigma.clone(), p1),
            (None, None, None) => Err(Error::InvalidArgument(
                "give --fixed-spectrum, or --ensemble2/--m2 for two random states".into(),
            )),
            (None, k2, m2) => {
                let p2 = EnsembleParams::new(k2.unwrap_or(self.ensemble), self.n, m2.unwrap_or(self.m()))?;
                Scenario::random_vs_random(p1, p2)
            }
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Chain burn-in in sweeps (Bures-Hall states only).
    #[arg(long)]
    burn_in: Option<usize>,
    /// Chain sweeps between emitted samples (Bures-Hall states only).
    #[arg(long)]
    thin: Option<usize>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

impl RunArgs {
    fn mcmc(&self) -> McmcConfig {
        let mut cfg = McmcConfig::default();
        if let Some(b) = self.burn_in {
            cfg.burn_in_sweeps = b;
        }
        if let Some(t) = self.thin {
            cfg.thinning_sweeps = t;
        }
        cfg
    }
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<ReportFormat>,
}

fn with_output(path: &Option<PathBuf>, body: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            body(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ExactOutput<'a> {
    scenario: &'a Scenario,
    exact: HellingerSummary,
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.16e}")).unwrap_or_default()
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Exact { scenario, output } => {
            let scenario = scenario.scenario()?;
            let exact = hellinger_summary(&scenario)?;
            with_output(&output.out, |w| match output.format.unwrap_or_default() {
                ReportFormat::Json => write_json(&ExactOutput { scenario: &scenario, exact }, w),
                ReportFormat::Csv => {
                    writeln!(w, "mean_affinity,mean_sq_affinity,mean_dh,var_dh,gamma_shape,gamma_rate")?;
                    writeln!(
                        w,
                        "{:.16e},{:.16e},{:.16e},{:.16e},{},{}",
                        exact.mean_affinity,
                        exact.mean_sq_affinity,
                        exact.mean_dh,
                        exact.var_dh,
                        opt(exact.gamma_shape),
                        opt(exact.gamma_rate)
                    )?;
                    Ok(())
                }
            })?;
            Ok(true)
        }
        Command::Simulate { scenario, run, trials, bins, output } => {
            let mut cfg = ExperimentConfig::new(scenario.scenario()?, trials, run.seed);
            cfg.mcmc = run.mcmc();
            cfg.histogram_bins = bins;
            cfg.workers = run.workers;
            let report = run_experiment(&cfg)?;
            for warning in &report.diagnostics.warnings {
                eprintln!("warning: {warning}");
            }
            with_output(&output.out, |w| emit_report(&report, output.format.unwrap_or_default(), w))?;
            Ok(true)
        }
        Command::Verify { trials, seed, out } => {
            let report = run_verification(trials, seed)?;
            with_output(&out, |w| write_json(&report, w))?;
            if !report.passed {
                eprintln!("verification failed");
            }
            Ok(report.passed)
        }
        Command::Sweep { scenario, run, m_from, m_to, trials, output } => {
            let cfg = SweepConfig {
                kind_1: scenario.ensemble,
                kind_2: if scenario.fixed_spectrum.is_some() {
                    None
                } else {
                    Some(scenario.ensemble2.unwrap_or(scenario.ensemble))
                },
                fixed_spectrum: scenario.fixed_spectrum.clone(),
                n: scenario.n,
                m_1: scenario.m(),
                m_from,
                m_to,
                trials,
                seed: run.seed,
                mcmc: run.mcmc(),
                workers: run.workers,
            };
            let rows = run_sweep(&cfg)?;
            with_output(&output.out, |w| {
                emit_sweep(&rows, output.format.unwrap_or(ReportFormat::Csv), w)
            })?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidArgument(_) | Error::Domain(_) | Error::Unsupported(_) => 2,
                Error::Consistency(_) | Error::NotPsd { .. } => 3,
                _ => 1,
            })
        }
    }
}
