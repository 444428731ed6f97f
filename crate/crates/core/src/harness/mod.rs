//! Monte Carlo experiments, Haar-moment checks, quadrature oracles, parameter
//! sweeps and report serialization.

mod experiment;
mod haar;
mod histogram;
mod quadrature;
mod report;
mod sweep;
mod verify;

pub use experiment::{
    run_experiment, sample_dh, ChainReport, ExperimentConfig, MonteCarloStats, RunDiagnostics, RunParams,
    StatsReport,
};
pub use haar::{
    group_integral_fixed_exact, haar_moment4_exact, moment4_tuples, verify_group_integral_fixed,
    verify_haar_moment2, verify_haar_moment4, FourTuple, GroupIntegralCheck, HaarCheck,
};
pub use histogram::Histogram;
pub use quadrature::{tanh_sinh, two_by_two_moments_by_quadrature, QuadResult, TwoByTwoMoments};
pub use report::{emit_report, render_report, write_json, ReportFormat};
pub use sweep::{emit_sweep, run_sweep, SweepConfig, SweepRow};
pub use verify::{
    quadrature_checks, random_simplex_point, run_verification, QuadratureCheck, VerificationReport,
    SAMPLE_SPECTRUM_N5,
};
