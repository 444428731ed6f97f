use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::specialfn::{log_pochhammer, NeumaierSum};

fn check(n: usize, m: usize) -> Result<()> {
    if n == 0 || m < n {
        return Err(invalid(format!("need 1 <= n <= m, got n = {n}, m = {m}")));
    }
    Ok(())
}

/// `d` and the coefficients `L_i`, `0 <= i < n`, shared by both Bures-Hall
/// moments.
#[derive(Debug, Clone, PartialEq)]
pub struct BhTermTable {
    pub d: f64,
    pub l: Vec<f64>,
}

/// `d = n(n+2α)/2` and
/// `L_i = (i+1)_{1/2} (i+α+1/2)_{1/2} (i+2α+1)_{1/2} / [(n+2α+i+1)_{1/2} (n-i-1/2)_{1/2}]`.
pub fn bh_term_table(n: usize, alpha: usize) -> Result<BhTermTable> {
    if n == 0 {
        return Err(invalid("bh_term_table needs n >= 1"));
    }
    let (nf, af) = (n as f64, alpha as f64);
    let l = (0..n)
        .map(|i| {
            let i = i as f64;
            let log = log_pochhammer(i + 1.0, 0.5)? + log_pochhammer(i + af + 0.5, 0.5)?
                + log_pochhammer(i + 2.0 * af + 1.0, 0.5)?
                - log_pochhammer(nf + 2.0 * af + i + 1.0, 0.5)?
                - log_pochhammer(nf - i - 0.5, 0.5)?;
            Ok(log.exp())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BhTermTable {
        d: nf * (nf + 2.0 * af) / 2.0,
        l,
    })
}

/// `<tr sqrt ρ>` over the Bures-Hall ensemble:
/// `1/(π (d)_{1/2}) Σ_{i=0}^{n-1} (i+1)_{1/2} (i+2α+1)_{1/2} (i+α+3/2)_{1/2}
///   / [(n-i-1/2)_{1/2} (i+2α+n+1)_{1/2}] · (1 + (i+α+1/2)/(i+α+1))`.
pub fn mean_sqrt_trace_bh(n: usize, m: usize) -> Result<f64> {
    check(n, m)?;
    if n == 1 {
        return Ok(1.0);
    }
    let alpha = (m - n) as f64;
    let nf = n as f64;
    let d = nf * (nf + 2.0 * alpha) / 2.0;
    let mut sum = NeumaierSum::new();
    for i in 0..n {
        let i = i as f64;
        let log = log_pochhammer(i + 1.0, 0.5)? + log_pochhammer(i + 2.0 * alpha + 1.0, 0.5)?
            + log_pochhammer(i + alpha + 1.5, 0.5)?
            - log_pochhammer(nf - i - 0.5, 0.5)?
            - log_pochhammer(i + 2.0 * alpha + nf + 1.0, 0.5)?;
        sum.add(log.exp() * (1.0 + (i + alpha + 0.5) / (i + alpha + 1.0)));
    }
    Ok(sum.value() / (PI * log_pochhammer(d, 0.5)?.exp()))
}

/// `<(tr sqrt ρ)^2>` over the Bures-Hall ensemble, a double sum over
/// `0 <= i, j < n` weighted by `L_i L_j`.
pub fn second_moment_sqrt_trace_bh(n: usize, m: usize) -> Result<f64> {
    check(n, m)?;
    if n == 1 {
        return Ok(1.0);
    }
    let alpha = (m - n) as f64;
    let table = super::cached_bh_table(n, m - n)?;
    let mut sum = NeumaierSum::new();
    for i in 0..n {
        let fi = i as f64;
        let hi = fi + alpha + 0.5;
        for j in 0..n {
            let fj = j as f64;
            let hj = fj + alpha + 0.5;
            let first = (2.0 + 1.0 / (2.0 * hi)) * (2.0 + 1.0 / (2.0 * hj));
            // (i-j-1/2)(j-i-1/2) never vanishes for integer i - j
            let second = 1.0 / (2.0 * (fi - fj - 0.5) * (fj - fi - 0.5))
                * (1.0 + (fi + alpha + 1.0) * (fj + alpha + 1.0) / (hi * hj));
            let third = (fj + alpha + 1.0)
                / ((fi + fj + 2.0 * alpha + 1.0) * (fi + fj + 2.0 * alpha + 2.0) * hj);
            sum.add(table.l[i] * table.l[j] * (first - second + third));
        }
    }
    Ok(1.0 + sum.value() / (PI * PI * table.d))
}
