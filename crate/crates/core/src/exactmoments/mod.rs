//! Closed forms for the first two moments of `tr sqrt ρ` over the
//! Hilbert-Schmidt and Bures-Hall ensembles, and the low-order unitary
//! Weingarten constants.
//!
//! The `ξ` table and the Bures-Hall coefficients depend only on `(n, α)` and
//! are cached process-wide.

mod bh;
mod hs;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

pub use bh::{bh_term_table, mean_sqrt_trace_bh, second_moment_sqrt_trace_bh, BhTermTable};
pub use hs::{mean_sqrt_trace_hs, second_moment_sqrt_trace_hs, xi_entry, xi_matrix, XiMatrix};

use crate::ensembles::{EnsembleKind, EnsembleParams};
use crate::error::{Error, Result};

type Cache<T> = RwLock<HashMap<(usize, usize), Arc<T>>>;

fn cached<T>(cache: &'static OnceLock<Cache<T>>, key: (usize, usize), build: impl FnOnce() -> Result<T>) -> Result<Arc<T>> {
    let cache = cache.get_or_init(Default::default);
    if let Some(v) = cache.read().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return Ok(Arc::clone(v));
    }
    let v = Arc::new(build()?);
    let mut w = cache.write().unwrap_or_else(|e| e.into_inner());
    Ok(Arc::clone(w.entry(key).or_insert(v)))
}

pub(crate) fn cached_xi(n: usize, alpha: usize) -> Result<Arc<XiMatrix>> {
    static CACHE: OnceLock<Cache<XiMatrix>> = OnceLock::new();
    cached(&CACHE, (n, alpha), || xi_matrix(n, alpha))
}

pub(crate) fn cached_bh_table(n: usize, alpha: usize) -> Result<Arc<BhTermTable>> {
    static CACHE: OnceLock<Cache<BhTermTable>> = OnceLock::new();
    cached(&CACHE, (n, alpha), || bh_term_table(n, alpha))
}

/// `<tr sqrt ρ>` and `<(tr sqrt ρ)^2>` for one ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentPair {
    pub first: f64,
    pub second: f64,
}

impl MomentPair {
    /// `<(tr sqrt ρ)^2> - <tr sqrt ρ>^2`.
    pub fn variance(&self) -> f64 {
        self.second - self.first * self.first
    }
}

/// Both moments of `tr sqrt ρ` for the given ensemble.
pub fn sqrt_trace_moments(params: &EnsembleParams) -> Result<MomentPair> {
    let (n, m) = (params.n(), params.m());
    let (first, second) = match params.kind() {
        EnsembleKind::Hs => (mean_sqrt_trace_hs(n, m)?, second_moment_sqrt_trace_hs(n, m)?),
        EnsembleKind::Bh => (mean_sqrt_trace_bh(n, m)?, second_moment_sqrt_trace_bh(n, m)?),
    };
    Ok(MomentPair { first, second })
}

/// Weingarten values of the unitary group `U(n)` for permutations of one and
/// two elements.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeingartenConstants {
    pub n: usize,
    /// `Wg(1) = 1/n`.
    pub wg1: f64,
    /// `Wg(1,1) = 1/(n^2 - 1)`.
    pub wg11: f64,
    /// `Wg(2) = -1/(n(n^2 - 1))`.
    pub wg2: f64,
}

impl WeingartenConstants {
    /// Fails for `n < 2`, where the two-element values have a pole.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!(
                "two-element Weingarten values need n >= 2, got n = {n}"
            )));
        }
        let nf = n as f64;
        let d = nf * nf - 1.0;
        Ok(Self {
            n,
            wg1: 1.0 / nf,
            wg11: 1.0 / d,
            wg2: -1.0 / (nf * d),
        })
    }
}
