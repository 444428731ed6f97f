//! Hilbert-Schmidt and Bures-Hall ensembles: parameters, samplers, joint
//! eigenvalue densities and the log-gas Metropolis chain.
//!
//! Both ensembles are unitarily invariant, so a fixed density matrix can be
//! represented by its spectrum embedded as a diagonal matrix.

mod jpdf;
mod mcmc;
mod params;
mod samplers;

pub use jpdf::{log_jpdf_bh, log_jpdf_hs, log_norm_bh, log_norm_hs};
pub use mcmc::{sample_bh_spectrum_mcmc, BhChain, ChainDiagnostics, McmcConfig};
pub use params::{EnsembleKind, EnsembleParams, Spectrum, SPECTRUM_SUM_TOL};
pub use samplers::{
    assemble_density_from_spectrum, assemble_sqrt_from_spectrum, sample_bh_density_square,
    sample_hs_density,
};
