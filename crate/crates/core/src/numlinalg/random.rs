use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use std::f64::consts::FRAC_1_SQRT_2;

use super::ComplexMatrix;
use crate::error::{invalid, Result};

/// One unit-variance complex Gaussian: real and imaginary parts are
/// independent N(0, 1/2).
#[inline]
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2)
}

/// `n x m` complex Ginibre matrix with i.i.d. unit-variance entries.
pub fn sample_ginibre<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<ComplexMatrix> {
    if n == 0 || m == 0 {
        return Err(invalid(format!("Ginibre dimensions must be positive, got {n}x{m}")));
    }
    let data = (0..n * m).map(|_| complex_normal(rng)).collect();
    ComplexMatrix::from_row_major(n, m, data)
}

/// Haar-distributed `n x n` unitary.
///
/// QR-factors a square Ginibre draw with Householder reflections, then
/// multiplies column `k` of `Q` by the phase of `R[k][k]`. Without the phase
/// correction the result is unitary but not Haar.
pub fn sample_haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<ComplexMatrix> {
    let g = sample_ginibre(n, n, rng)?;
    let (mut q, r_diag) = householder_qr(g);
    for (k, r) in r_diag.iter().enumerate() {
        let norm = r.norm();
        let phase = if norm > 0.0 { r / norm } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, k)] *= phase;
        }
    }
    Ok(q)
}

/// Returns the unitary factor `Q` and the diagonal of `R` for square `a`.
fn householder_qr(mut a: ComplexMatrix) -> (ComplexMatrix, Vec<Complex64>) {
    let n = a.rows();
    let mut q = ComplexMatrix::identity(n);
    let mut r_diag = Vec::with_capacity(n);
    let mut v = vec![Complex64::new(0.0, 0.0); n];

    for k in 0..n {
        let norm = (k..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            r_diag.push(Complex64::new(0.0, 0.0));
            continue;
        }
        let x0 = a[(k, k)];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { Complex64::new(1.0, 0.0) };
        let alpha = -phase * norm;

        for i in k..n {
            v[i] = a[(i, k)];
        }
        v[k] -= alpha;
        let vnorm = (k..n).map(|i| v[i].norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            r_diag.push(alpha);
            continue;
        }
        for vi in &mut v[k..n] {
            *vi /= vnorm;
        }

        // A <- (I - 2 v v^H) A on rows k..n
        for j in k..n {
            let dot: Complex64 = (k..n).map(|i| v[i].conj() * a[(i, j)]).sum();
            for i in k..n {
                let upd = v[i] * dot * 2.0;
                a[(i, j)] -= upd;
            }
        }
        // Q <- Q (I - 2 v v^H)
        for i in 0..n {
            let dot: Complex64 = (k..n).map(|j| q[(i, j)] * v[j]).sum();
            for j in k..n {
                let upd = dot * v[j].conj() * 2.0;
                q[(i, j)] -= upd;
            }
        }
        r_diag.push(alpha);
    }
    (q, r_diag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn zero_dimension_is_rejected() {
        let mut rng = seeded(1);
        assert!(sample_ginibre(0, 3, &mut rng).is_err());
        assert!(sample_ginibre(3, 0, &mut rng).is_err());
        assert!(sample_haar_unitary(0, &mut rng).is_err());
    }

    #[test]
    fn ginibre_shape_and_finiteness() {
        let mut rng = seeded(2);
        let g = sample_ginibre(3, 5, &mut rng).unwrap();
        assert_eq!((g.rows(), g.cols()), (3, 5));
        assert!(g.is_finite());
    }

    #[test]
    fn ginibre_unit_variance() {
        let mut rng = seeded(3);
        let draws = 100_000;
        let mean_sq: f64 = (0..draws)
            .map(|_| sample_ginibre(1, 1, &mut rng).unwrap()[(0, 0)].norm_sqr())
            .sum::<f64>()
            / draws as f64;
        assert!((mean_sq - 1.0).abs() < 0.02, "E|g|^2 = {mean_sq}");
    }

    #[test]
    fn ginibre_mean_is_zero_within_clt_bound() {
        let mut rng = seeded(4);
        let draws = 100_000;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut count = 0usize;
        for _ in 0..draws {
            let g = sample_ginibre(2, 2, &mut rng).unwrap();
            for z in g.as_slice() {
                sum += z;
                count += 1;
            }
        }
        let mean = sum / count as f64;
        // each part has variance 1/2
        let se = (0.5 / count as f64).sqrt();
        assert!(mean.re.abs() < 3.0 * se && mean.im.abs() < 3.0 * se, "{mean}");
    }

    #[test]
    fn haar_is_unitary() {
        let mut rng = seeded(5);
        for n in 1..=6 {
            let u = sample_haar_unitary(n, &mut rng).unwrap();
            let prod = &u.adjoint() * &u;
            assert!(prod.max_abs_diff(&ComplexMatrix::identity(n)) < 1e-12);
        }
    }

    #[test]
    fn haar_scalar_has_unit_modulus_and_uniform_phase() {
        let mut rng = seeded(6);
        let draws = 20_000;
        let mut mean = Complex64::new(0.0, 0.0);
        for _ in 0..draws {
            let u = sample_haar_unitary(1, &mut rng).unwrap()[(0, 0)];
            assert!((u.norm() - 1.0).abs() < 1e-14);
            mean += u;
        }
        mean /= draws as f64;
        // E[e^{i theta}] = 0, each part has variance 1/2
        let se = (0.5 / draws as f64).sqrt();
        assert!(mean.norm() < 4.0 * se, "{mean}");
    }

    #[test]
    fn haar_second_moment_of_corner_entry() {
        let mut rng = seeded(7);
        let draws = 100_000;
        let samples: Vec<f64> = (0..draws)
            .map(|_| sample_haar_unitary(3, &mut rng).unwrap()[(0, 0)].norm_sqr())
            .collect();
        let mean = samples.iter().sum::<f64>() / draws as f64;
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (draws - 1) as f64;
        let se = (var / draws as f64).sqrt();
        assert!((mean - 1.0 / 3.0).abs() < 3.0 * se, "mean {mean}, se {se}");
    }
}
