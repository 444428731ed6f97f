//! Scalar special functions used by the closed-form moments.
//!
//! Pochhammer symbols that can see nonpositive arguments go through the
//! integer-step product [`pochhammer_int`]; only strictly positive arguments
//! use the log-gamma ratio in [`pochhammer`].

use crate::error::{Error, Result};

const SERIES_RTOL: f64 = 1e-15;
const SERIES_MAX_TERMS: usize = 100_000;

fn finite(x: f64, what: &str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Domain(format!("{what} evaluated to {x}")))
    }
}

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "log_gamma needs a positive finite argument, got {x}"
        )));
    }
    finite(statrs::function::gamma::ln_gamma(x), "log_gamma")
}

/// `(a)_b = Γ(a + b) / Γ(a)` for real `b`, restricted to `a > 0`, `a + b > 0`.
pub fn pochhammer(a: f64, b: f64) -> Result<f64> {
    if b == 0.0 {
        return Ok(1.0);
    }
    if !(a > 0.0) || !(a + b > 0.0) {
        return Err(Error::Domain(format!(
            "pochhammer({a}, {b}) leaves the positive-argument regime; use pochhammer_int for integer steps"
        )));
    }
    finite((log_gamma(a + b)? - log_gamma(a)?).exp(), "pochhammer")
}

/// Logarithm of [`pochhammer`] for the same domain.
pub fn log_pochhammer(a: f64, b: f64) -> Result<f64> {
    if b == 0.0 {
        return Ok(0.0);
    }
    if !(a > 0.0) || !(a + b > 0.0) {
        return Err(Error::Domain(format!(
            "log_pochhammer({a}, {b}) needs a > 0 and a + b > 0"
        )));
    }
    Ok(log_gamma(a + b)? - log_gamma(a)?)
}

/// `(a)_k` for integer `k` as a finite product:
/// `a (a+1) ... (a+k-1)` for `k > 0`, `1 / ((a-1)(a-2) ... (a-|k|))` for `k < 0`.
pub fn pochhammer_int(a: f64, k: i64) -> Result<f64> {
    if k >= 0 {
        return Ok((0..k).map(|i| a + i as f64).product());
    }
    let mut denom = 1.0;
    for i in 1..=k.unsigned_abs() {
        let f = a - i as f64;
        if f == 0.0 {
            return Err(Error::Pole(format!("({a})_{k} has a zero factor")));
        }
        denom *= f;
    }
    Ok(1.0 / denom)
}

/// Binomial coefficient `C(1/2, j)` via the falling factorial.
pub fn binom_half(j: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..j {
        acc *= (0.5 - i as f64) / (i + 1) as f64;
    }
    acc
}

/// Terminating `3F2(a1, -j, -k; b1, b2; 1)`, summed up to `l = min(j, k)`.
pub fn hyp3f2_terminating(a1: f64, j: u32, k: u32, b1: f64, b2: f64) -> Result<f64> {
    let top = j.min(k);
    let mut term = 1.0;
    let mut sum = NeumaierSum::new();
    sum.add(term);
    for l in 0..top {
        let lf = l as f64;
        let d1 = b1 + lf;
        let d2 = b2 + lf;
        if d1 == 0.0 || d2 == 0.0 {
            return Err(Error::Pole(format!(
                "lower parameter ({b1}, {b2}) hits zero at step {l} of the 3F2 series"
            )));
        }
        term *= (a1 + lf) * (lf - j as f64) * (lf - k as f64) / (d1 * d2 * (lf + 1.0));
        sum.add(term);
    }
    finite(sum.value(), "3F2")
}

/// Gauss hypergeometric `2F1(a, b; c; z)` for `z` in `[0, 1]`.
///
/// Power series for `z < 1`; the Gauss summation formula at `z = 1`, which
/// needs `c - a - b > 0`.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&z) {
        return Err(Error::Domain(format!("2F1 is only supported for z in [0, 1], got {z}")));
    }
    if !(c > 0.0) {
        return Err(Error::Domain(format!("2F1 needs c > 0, got {c}")));
    }
    if z == 1.0 {
        if !(c - a - b > 0.0) {
            return Err(Error::Domain(format!(
                "2F1 at z = 1 diverges unless c - a - b > 0 (got {})",
                c - a - b
            )));
        }
        use statrs::function::gamma::gamma;
        return finite(
            gamma(c) * gamma(c - a - b) / (gamma(c - a) * gamma(c - b)),
            "2F1 Gauss sum",
        );
    }
    let mut term = 1.0;
    let mut sum = NeumaierSum::new();
    sum.add(term);
    for n in 0..SERIES_MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum.add(term);
        if term == 0.0 || term.abs() < SERIES_RTOL * sum.value().abs() {
            return finite(sum.value(), "2F1");
        }
    }
    Err(Error::NoConvergence {
        iterations: SERIES_MAX_TERMS,
        residual: term.abs(),
    })
}

/// Regularized lower incomplete gamma `P(a, x)`; the CDF of a unit-rate gamma.
pub fn regularized_lower_gamma(a: f64, x: f64) -> Result<f64> {
    if !(a > 0.0) || x.is_nan() {
        return Err(Error::Domain(format!("P({a}, {x}) is undefined")));
    }
    if x <= 0.0 {
        return Ok(0.0);
    }
    if x == f64::INFINITY {
        return Ok(1.0);
    }
    finite(statrs::function::gamma::gamma_lr(a, x), "incomplete gamma")
}

/// Neumaier's compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}
