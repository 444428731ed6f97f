use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specialfn::{log_gamma, regularized_lower_gamma};

fn check_params(shape: f64, rate: f64) -> Result<()> {
    if !(shape > 0.0 && shape.is_finite() && rate > 0.0 && rate.is_finite()) {
        return Err(Error::Domain(format!(
            "gamma parameters must be positive and finite, got shape = {shape}, rate = {rate}"
        )));
    }
    Ok(())
}

/// Gamma density `rate^shape / Γ(shape) x^(shape-1) e^(-rate x)`.
///
/// At `x = 0` the value is `+inf` for `shape < 1`, `rate` for `shape = 1` and
/// `0` otherwise.
pub fn gamma_pdf(x: f64, shape: f64, rate: f64) -> Result<f64> {
    check_params(shape, rate)?;
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("gamma density needs x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(if shape < 1.0 {
            f64::INFINITY
        } else if shape == 1.0 {
            rate
        } else {
            0.0
        });
    }
    let log = shape * rate.ln() - log_gamma(shape)? + (shape - 1.0) * x.ln() - rate * x;
    Ok(log.exp())
}

/// Gamma distribution fitted by matching mean and variance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaFit {
    pub shape: f64,
    pub rate: f64,
}

impl GammaFit {
    pub fn new(shape: f64, rate: f64) -> Result<Self> {
        check_params(shape, rate)?;
        Ok(Self { shape, rate })
    }

    /// `shape = mean^2 / var`, `rate = mean / var`. `None` unless both
    /// moments are positive.
    pub fn from_moments(mean: f64, var: f64) -> Option<Self> {
        if mean > 0.0 && var > 0.0 && mean.is_finite() && var.is_finite() {
            Some(Self {
                shape: mean * mean / var,
                rate: mean / var,
            })
        } else {
            None
        }
    }

    pub fn mean(&self) -> f64 {
        self.shape / self.rate
    }

    pub fn variance(&self) -> f64 {
        self.shape / (self.rate * self.rate)
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        gamma_pdf(x, self.shape, self.rate)
    }

    /// `P(X <= x)`; zero for negative `x`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        if x <= 0.0 {
            return Ok(0.0);
        }
        if x == f64::INFINITY {
            return Ok(1.0);
        }
        regularized_lower_gamma(self.shape, self.rate * x)
    }
}
