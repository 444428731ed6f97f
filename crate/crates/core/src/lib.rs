//! Exact first and second moments of the squared Hellinger distance
//! `D_H = 2 - 2 tr(sqrt(ρ1) sqrt(ρ2))` between density matrices, where one or
//! both are drawn from the Hilbert-Schmidt or Bures-Hall ensembles.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`numlinalg`] | complex matrices, Ginibre/Haar samplers, Jacobi eigensolver, PSD square roots, affinity |
//! | [`specialfn`] | log-gamma, Pochhammer symbols, half-integer binomials, `3F2`, `2F1` |
//! | [`ensembles`] | ensemble parameters, samplers, joint eigenvalue densities, log-gas MCMC |
//! | [`exactmoments`] | closed forms for `<tr sqrt ρ>` and `<(tr sqrt ρ)^2>`, Weingarten constants |
//! | [`hellinger`] | mean/variance of `D_H`, gamma approximation, large-n asymptotics |
//! | [`harness`] | Monte Carlo experiments, Haar-moment checks, quadrature oracles, reports |
//!
//! ```
//! use hellinger_core::ensembles::{EnsembleKind, EnsembleParams};
//! use hellinger_core::hellinger::{hellinger_summary, Scenario};
//!
//! let hs = EnsembleParams::new(EnsembleKind::Hs, 3, 4).unwrap();
//! let bh = EnsembleParams::new(EnsembleKind::Bh, 3, 6).unwrap();
//! let summary = hellinger_summary(&Scenario::random_vs_random(hs, bh).unwrap()).unwrap();
//! assert!(summary.mean_dh > 0.0 && summary.var_dh > 0.0);
//! ```

// NaN-rejecting guards are written as negated comparisons on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ensembles;
pub mod error;
pub mod exactmoments;
pub mod harness;
pub mod hellinger;
pub mod numlinalg;
pub mod rng;
pub mod specialfn;
pub mod stats;

pub use error::{Error, Result};
