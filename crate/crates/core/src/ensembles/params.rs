use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::numlinalg::DensityMatrix;

/// Spectrum sum tolerance.
pub const SPECTRUM_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnsembleKind {
    /// Hilbert-Schmidt: `GG† / tr(GG†)`.
    Hs,
    /// Bures-Hall.
    Bh,
}

impl EnsembleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EnsembleKind::Hs => "hs",
            EnsembleKind::Bh => "bh",
        }
    }
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hs" => Ok(EnsembleKind::Hs),
            "bh" => Ok(EnsembleKind::Bh),
            other => Err(invalid(format!("unknown ensemble '{other}' (expected hs or bh)"))),
        }
    }
}

/// Ensemble tag with system dimension `n` and ancilla dimension `m >= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct EnsembleParams {
    kind: EnsembleKind,
    n: usize,
    m: usize,
}

impl EnsembleParams {
    pub fn new(kind: EnsembleKind, n: usize, m: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("system dimension n must be at least 1"));
        }
        if m < n {
            return Err(invalid(format!("ancilla dimension m = {m} must be >= n = {n}")));
        }
        Ok(Self { kind, n, m })
    }

    pub fn kind(&self) -> EnsembleKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Rectangularity `m - n`.
    pub fn alpha(&self) -> usize {
        self.m - self.n
    }
}

impl fmt::Display for EnsembleParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={}, m={})", self.kind, self.n, self.m)
    }
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    kind: EnsembleKind,
    n: usize,
    m: usize,
    alpha: usize,
}

impl TryFrom<RawParams> for EnsembleParams {
    type Error = Error;

    fn try_from(r: RawParams) -> Result<Self> {
        let p = Self::new(r.kind, r.n, r.m)?;
        if p.alpha() != r.alpha {
            return Err(invalid(format!("alpha {} does not equal m - n", r.alpha)));
        }
        Ok(p)
    }
}

impl From<EnsembleParams> for RawParams {
    fn from(p: EnsembleParams) -> Self {
        RawParams {
            kind: p.kind,
            n: p.n,
            m: p.m,
            alpha: p.alpha(),
        }
    }
}

/// Eigenvalues of a density matrix: a probability vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    /// Each value must lie in `[0, 1]` and the sum must be 1 within 1e-12.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        Self::check(&values, SPECTRUM_SUM_TOL)?;
        Ok(Self(values))
    }

    /// Accepts a sum within `tol` of 1 and rescales to unit sum.
    pub fn normalized(values: Vec<f64>, tol: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(invalid("spectrum is empty"));
        }
        if values.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(invalid("spectrum values must be finite and nonnegative"));
        }
        let total: f64 = values.iter().sum();
        if (total - 1.0).abs() > tol {
            return Err(invalid(format!("spectrum sums to {total}, expected 1 within {tol:e}")));
        }
        Self::new(values.into_iter().map(|x| x / total).collect())
    }

    /// `(1/n, ..., 1/n)`.
    pub fn maximally_mixed(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("spectrum is empty"));
        }
        Self::new(vec![1.0 / n as f64; n])
    }

    /// `(1, 0, ..., 0)`.
    pub fn pure(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("spectrum is empty"));
        }
        let mut v = vec![0.0; n];
        v[0] = 1.0;
        Self::new(v)
    }

    fn check(values: &[f64], tol: f64) -> Result<()> {
        if values.is_empty() {
            return Err(invalid("spectrum is empty"));
        }
        if let Some(bad) = values.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(invalid(format!("spectrum value {bad} outside [0, 1]")));
        }
        let total: f64 = values.iter().sum();
        if (total - 1.0).abs() > tol {
            return Err(invalid(format!("spectrum sums to {total}, expected 1")));
        }
        Ok(())
    }

    pub(crate) fn from_vec_unchecked(values: Vec<f64>) -> Self {
        debug_assert!(Self::check(&values, SPECTRUM_SUM_TOL).is_ok(), "{values:?}");
        Self(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ sqrt(λ_i) = tr sqrt(ρ)`.
    pub fn sqrt_trace(&self) -> f64 {
        self.0.iter().map(|x| x.sqrt()).sum()
    }

    /// The diagonal density matrix with this spectrum.
    pub fn to_density(&self) -> Result<DensityMatrix> {
        DensityMatrix::diagonal(&self.0)
    }
}

impl TryFrom<Vec<f64>> for Spectrum {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Spectrum> for Vec<f64> {
    fn from(s: Spectrum) -> Self {
        s.0
    }
}

impl FromStr for Spectrum {
    type Err = Error;

    /// Comma-separated eigenvalues. The sum must be within 1e-9 of 1 and is
    /// rescaled to exactly unit sum.
    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|e| invalid(format!("bad eigenvalue '{}': {e}", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::normalized(values, 1e-9)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validation() {
        assert!(EnsembleParams::new(EnsembleKind::Hs, 0, 3).is_err());
        assert!(EnsembleParams::new(EnsembleKind::Hs, 4, 3).is_err());
        let p = EnsembleParams::new(EnsembleKind::Bh, 3, 7).unwrap();
        assert_eq!(p.alpha(), 4);
    }

    #[test]
    fn params_serde_checks_alpha() {
        let p = EnsembleParams::new(EnsembleKind::Bh, 3, 7).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"kind":"bh","n":3,"m":7,"alpha":4}"#);
        assert_eq!(serde_json::from_str::<EnsembleParams>(&json).unwrap(), p);
        assert!(serde_json::from_str::<EnsembleParams>(r#"{"kind":"bh","n":3,"m":7,"alpha":1}"#).is_err());
    }

    #[test]
    fn spectrum_parsing() {
        let s: Spectrum = "0.07, 0.16,0.17,0.23,0.37".parse().unwrap();
        assert_eq!(s.len(), 5);
        assert!((s.values().iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!("0.5,0.4".parse::<Spectrum>().is_err());
        assert!("0.5,x".parse::<Spectrum>().is_err());
        assert!("1.2,-0.2".parse::<Spectrum>().is_err());
        let nearly: Spectrum = "0.5,0.5000000001".parse().unwrap();
        assert!((nearly.values().iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn spectrum_invariants() {
        assert!(Spectrum::new(vec![0.5, 0.6]).is_err());
        assert!(Spectrum::new(vec![]).is_err());
        assert!((Spectrum::maximally_mixed(4).unwrap().sqrt_trace() - 2.0).abs() < 1e-15);
        assert_eq!(Spectrum::pure(3).unwrap().sqrt_trace(), 1.0);
        assert!("hs".parse::<EnsembleKind>().is_ok() && "xx".parse::<EnsembleKind>().is_err());
    }
}
