use crate::error::{invalid, Result};
use crate::specialfn::{binom_half, hyp3f2_terminating, log_gamma, pochhammer, pochhammer_int, NeumaierSum};

fn check(n: usize, m: usize) -> Result<()> {
    if n == 0 || m < n {
        return Err(invalid(format!("need 1 <= n <= m, got n = {n}, m = {m}")));
    }
    Ok(())
}

/// `<tr sqrt ρ>` over the Hilbert-Schmidt ensemble:
/// `2/(mn)_{1/2} Σ_{j=1}^{n} C(1/2,j) C(1/2,j-1) (m)_{3/2-j} / (n+1)_{-j}`.
pub fn mean_sqrt_trace_hs(n: usize, m: usize) -> Result<f64> {
    check(n, m)?;
    if n == 1 {
        return Ok(1.0);
    }
    let (nf, mf) = (n as f64, m as f64);
    let mut sum = NeumaierSum::new();
    for j in 1..=n {
        let jf = j as f64;
        // (m)_{3/2-j}: m + 3/2 - j >= 3/2 since j <= n <= m
        let rising_m = pochhammer(mf, 1.5 - jf)?;
        let falling_n = pochhammer_int(nf + 1.0, -(j as i64))?;
        sum.add(binom_half(j as u32) * binom_half(j as u32 - 1) * rising_m / falling_n);
    }
    Ok(2.0 / pochhammer(mf * nf, 0.5)? * sum.value())
}

/// The `n x n` table `ξ_jk`, `0 <= j, k < n`, at rectangularity `α`.
#[derive(Debug, Clone, PartialEq)]
pub struct XiMatrix {
    n: usize,
    alpha: usize,
    entries: Vec<f64>,
}

impl XiMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.entries[j * self.n + k]
    }
}

/// `ξ_jk = [j!/(j+α)!] C(1/2,j)^2 3F2(α+3/2, -j, -k; 3/2-j, 3/2-k; 1)`.
pub fn xi_entry(j: usize, k: usize, alpha: usize) -> Result<f64> {
    let af = alpha as f64;
    let log_ratio = log_gamma(j as f64 + 1.0)? - log_gamma((j + alpha) as f64 + 1.0)?;
    let b = binom_half(j as u32);
    let f = hyp3f2_terminating(af + 1.5, j as u32, k as u32, 1.5 - j as f64, 1.5 - k as f64)?;
    Ok(log_ratio.exp() * b * b * f)
}

pub fn xi_matrix(n: usize, alpha: usize) -> Result<XiMatrix> {
    if n == 0 {
        return Err(invalid("xi_matrix needs n >= 1"));
    }
    let mut entries = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            entries.push(xi_entry(j, k, alpha)?);
        }
    }
    Ok(XiMatrix { n, alpha, entries })
}

/// `<(tr sqrt ρ)^2>` over the Hilbert-Schmidt ensemble:
/// `1 + 2Γ²(α+3/2)/(nm) Σ_{0<=j<k<n} (ξ_jj ξ_kk - ξ_jk ξ_kj)`.
pub fn second_moment_sqrt_trace_hs(n: usize, m: usize) -> Result<f64> {
    check(n, m)?;
    if n == 1 {
        return Ok(1.0);
    }
    let alpha = m - n;
    let xi = super::cached_xi(n, alpha)?;
    let mut sum = NeumaierSum::new();
    for j in 0..n {
        for k in j + 1..n {
            sum.add(xi.get(j, j) * xi.get(k, k) - xi.get(j, k) * xi.get(k, j));
        }
    }
    let g = log_gamma(alpha as f64 + 1.5)?;
    Ok(1.0 + 2.0 * (2.0 * g).exp() / (n * m) as f64 * sum.value())
}
