//! Joint eigenvalue densities on the probability simplex.
//!
//! Densities are taken with respect to Lebesgue measure on the first `n - 1`
//! coordinates (`λ_n = 1 - Σ λ_i`), for unordered eigenvalues. With this
//! convention `∫ exp(log_jpdf) dλ_1 ... dλ_{n-1} = 1`.

use std::f64::consts::{LN_2, PI};

use super::{EnsembleParams, Spectrum};
use crate::error::{invalid, Error, Result};
use crate::specialfn::log_gamma;

/// `ln C_HS = ln Γ(nm) - Σ_{j=0}^{n-1} [ln Γ(m-j) + ln Γ(n-j+1)]`.
pub fn log_norm_hs(n: usize, m: usize) -> Result<f64> {
    let mut acc = log_gamma((n * m) as f64)?;
    for j in 0..n {
        acc -= log_gamma((m - j) as f64)? + log_gamma((n - j + 1) as f64)?;
    }
    Ok(acc)
}

/// `ln C_BH` with `d = n(n + 2α)/2`:
/// `ln Γ(d) + n(n + 2α - 1) ln 2 - (n/2) ln π - Σ_{i=1}^{n} [ln Γ(i+1) + ln Γ(i+2α) - ln Γ(i+α)]`.
pub fn log_norm_bh(n: usize, alpha: usize) -> Result<f64> {
    let (nf, af) = (n as f64, alpha as f64);
    let d = nf * (nf + 2.0 * af) / 2.0;
    let mut acc = log_gamma(d)? + nf * (nf + 2.0 * af - 1.0) * LN_2 - 0.5 * nf * PI.ln();
    for i in 1..=n {
        let i = i as f64;
        acc -= log_gamma(i + 1.0)? + log_gamma(i + 2.0 * af)? - log_gamma(i + af)?;
    }
    Ok(acc)
}

fn check_spectrum(spectrum: &Spectrum, params: &EnsembleParams) -> Result<()> {
    if spectrum.len() != params.n() {
        return Err(invalid(format!(
            "spectrum has {} values, ensemble has n = {}",
            spectrum.len(),
            params.n()
        )));
    }
    if let Some(bad) = spectrum.values().iter().find(|&&x| x <= 0.0) {
        return Err(Error::Domain(format!(
            "joint density needs positive eigenvalues, got {bad}"
        )));
    }
    Ok(())
}

/// Log of the Hilbert-Schmidt joint eigenvalue density. Coinciding
/// eigenvalues give `-inf`.
pub fn log_jpdf_hs(spectrum: &Spectrum, params: &EnsembleParams) -> Result<f64> {
    check_spectrum(spectrum, params)?;
    let n = params.n();
    if n == 1 {
        return Ok(0.0);
    }
    let lam = spectrum.values();
    let alpha = params.alpha() as f64;
    let mut acc = log_norm_hs(n, params.m())?;
    for i in 0..n {
        acc += alpha * lam[i].ln();
        for j in i + 1..n {
            acc += 2.0 * (lam[i] - lam[j]).abs().ln();
        }
    }
    Ok(acc)
}

/// Log of the Bures-Hall joint eigenvalue density. Coinciding eigenvalues
/// give `-inf`.
pub fn log_jpdf_bh(spectrum: &Spectrum, params: &EnsembleParams) -> Result<f64> {
    check_spectrum(spectrum, params)?;
    let n = params.n();
    if n == 1 {
        return Ok(0.0);
    }
    let lam = spectrum.values();
    let exponent = params.alpha() as f64 - 0.5;
    let mut acc = log_norm_bh(n, params.alpha())?;
    for i in 0..n {
        acc += exponent * lam[i].ln();
        for j in i + 1..n {
            acc += 2.0 * (lam[i] - lam[j]).abs().ln() - (lam[i] + lam[j]).ln();
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::EnsembleKind;

    fn params(kind: EnsembleKind, n: usize, m: usize) -> EnsembleParams {
        EnsembleParams::new(kind, n, m).unwrap()
    }

    #[test]
    fn single_eigenvalue_is_a_point_mass() {
        let one = Spectrum::new(vec![1.0]).unwrap();
        for m in 1..5 {
            assert_eq!(log_jpdf_hs(&one, &params(EnsembleKind::Hs, 1, m)).unwrap(), 0.0);
            assert_eq!(log_jpdf_bh(&one, &params(EnsembleKind::Bh, 1, m)).unwrap(), 0.0);
            // the general constants agree: both normalizations vanish at n = 1
            assert!(log_norm_hs(1, m).unwrap().abs() < 1e-14);
            assert!(log_norm_bh(1, m - 1).unwrap().abs() < 1e-14);
        }
    }

    #[test]
    fn degenerate_spectrum_is_minus_infinity() {
        let s = Spectrum::new(vec![0.5, 0.5]).unwrap();
        assert_eq!(log_jpdf_hs(&s, &params(EnsembleKind::Hs, 2, 2)).unwrap(), f64::NEG_INFINITY);
        assert_eq!(log_jpdf_bh(&s, &params(EnsembleKind::Bh, 2, 2)).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn zero_eigenvalue_is_a_domain_error() {
        let s = Spectrum::new(vec![1.0, 0.0]).unwrap();
        assert!(matches!(
            log_jpdf_hs(&s, &params(EnsembleKind::Hs, 2, 3)),
            Err(Error::Domain(_))
        ));
        assert!(log_jpdf_bh(&Spectrum::new(vec![0.5, 0.5]).unwrap(), &params(EnsembleKind::Bh, 3, 3)).is_err());
    }

    #[test]
    fn small_normalizations_in_closed_form() {
        // n = 2: C_HS(2,2) = 3, C_HS(2,3) = 30, C_BH(2,0) = 2/π, C_BH(2,1) = 32/π
        assert!((log_norm_hs(2, 2).unwrap() - 3f64.ln()).abs() < 1e-14);
        assert!((log_norm_hs(2, 3).unwrap() - 30f64.ln()).abs() < 1e-13);
        assert!((log_norm_bh(2, 0).unwrap() - (2.0 / PI).ln()).abs() < 1e-14);
        assert!((log_norm_bh(2, 1).unwrap() - (32.0 / PI).ln()).abs() < 1e-13);
    }

    #[test]
    fn hs_density_for_two_by_two() {
        // 3 (2λ - 1)^2 at m = 2
        let p = params(EnsembleKind::Hs, 2, 2);
        for x in [0.1, 0.3, 0.77] {
            let s = Spectrum::new(vec![x, 1.0 - x]).unwrap();
            let want = 3.0 * (2.0 * x - 1.0) * (2.0 * x - 1.0);
            assert!((log_jpdf_hs(&s, &p).unwrap().exp() - want).abs() < 1e-13);
        }
    }
}
