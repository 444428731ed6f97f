use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{invalid, Error, Result};

const HERMITIAN_TOL: f64 = 1e-10;
const OFF_DIAGONAL_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Spectral decomposition `H = V diag(values) V†`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Ascending.
    pub values: Vec<f64>,
    /// Unitary; column `k` is the eigenvector of `values[k]`.
    pub basis: ComplexMatrix,
}

impl EigenDecomposition {
    /// `V diag(f(λ)) V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let mapped: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        conjugate_diagonal(&self.basis, &mapped)
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|x| x)
    }
}

/// `U diag(d) U†` for real `d`, filled exactly Hermitian.
pub fn conjugate_diagonal(u: &ComplexMatrix, d: &[f64]) -> ComplexMatrix {
    let n = u.rows();
    debug_assert_eq!(d.len(), u.cols());
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        let ui = u.row(i);
        let diag: f64 = ui.iter().zip(d).map(|(a, &w)| a.norm_sqr() * w).sum();
        out[(i, i)] = Complex64::new(diag, 0.0);
        for j in i + 1..n {
            let uj = u.row(j);
            let s: Complex64 = ui
                .iter()
                .zip(uj)
                .zip(d)
                .map(|((a, b), &w)| a * b.conj() * w)
                .sum();
            out[(i, j)] = s;
            out[(j, i)] = s.conj();
        }
    }
    out
}

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// Iterates until the off-diagonal Frobenius norm drops below `1e-13`
/// (relative to the Frobenius norm of the input) or 100 sweeps elapse.
pub fn hermitian_eigh(h: &ComplexMatrix) -> Result<EigenDecomposition> {
    if !h.is_square() {
        return Err(invalid(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    let defect = h.hermiticity_defect();
    if defect > HERMITIAN_TOL || defect.is_nan() {
        return Err(invalid(format!("matrix is not Hermitian (defect {defect:e})")));
    }
    let n = h.rows();
    let mut a = h.clone();
    // force an exactly Hermitian working copy
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in i + 1..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    let tol = OFF_DIAGONAL_TOL * if scale > 0.0 { scale } else { 1.0 };

    let mut converged = off_diagonal_norm(&a) <= tol;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm(&a) <= tol;
    }
    if !converged {
        return Err(Error::NoConvergence {
            iterations: sweeps,
            residual: off_diagonal_norm(&a),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut basis = ComplexMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            basis[(r, new_col)] = v[(r, old_col)];
        }
    }
    Ok(EigenDecomposition { values, basis })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Annihilates `a[p][q]` with `A <- J† A J`, accumulating `V <- V J`.
///
/// `J` is a phase on column `q` (making the pivot real) followed by a real
/// Jacobi rotation.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / mag; // e^{i phi}
    let zeta = (aqq - app) / (2.0 * mag);
    let t = if zeta.is_infinite() {
        0.0
    } else {
        zeta.signum() / (zeta.abs() + (zeta * zeta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let e = phase.conj();
    // J = [[c, s], [-s e, c e]] in the (p, q) block
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -e * s;
    let jqq = e * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numlinalg::sample_ginibre;
    use crate::rng::seeded;

    fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
        let mut rng = seeded(seed);
        let g = sample_ginibre(n, n, &mut rng).unwrap();
        let mut h = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                h[(i, j)] = (g[(i, j)] + g[(j, i)].conj()) * 0.5;
            }
        }
        h
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let e = hermitian_eigh(&ComplexMatrix::identity(3)).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn diagonal_input_is_sorted() {
        let e = hermitian_eigh(&ComplexMatrix::from_real_diagonal(&[0.8, 0.2])).unwrap();
        assert_eq!(e.values, vec![0.2, 0.8]);
        assert_eq!(e.basis[(1, 0)].norm(), 1.0);
        assert_eq!(e.basis[(0, 1)].norm(), 1.0);
    }

    #[test]
    fn random_hermitian_reconstructs() {
        for (n, seed) in [(5, 11), (2, 12), (8, 13), (16, 14)] {
            let h = random_hermitian(n, seed);
            let e = hermitian_eigh(&h).unwrap();
            assert!(e.reconstruct().max_abs_diff(&h) < 1e-10);
            let gram = &e.basis.adjoint() * &e.basis;
            assert!(gram.max_abs_diff(&ComplexMatrix::identity(n)) < 1e-10);
            assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn rejects_non_square_and_non_hermitian() {
        assert!(matches!(
            hermitian_eigh(&ComplexMatrix::zeros(2, 3)),
            Err(Error::InvalidArgument(_))
        ));
        let mut m = ComplexMatrix::identity(2);
        m[(0, 1)] = Complex64::new(0.5, 0.0);
        assert!(matches!(hermitian_eigh(&m), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn handles_degenerate_and_zero_matrices() {
        let e = hermitian_eigh(&ComplexMatrix::zeros(3, 3)).unwrap();
        assert_eq!(e.values, vec![0.0; 3]);
        // rank-one projector onto (1, i)/sqrt2
        let mut p = ComplexMatrix::zeros(2, 2);
        p[(0, 0)] = Complex64::new(0.5, 0.0);
        p[(1, 1)] = Complex64::new(0.5, 0.0);
        p[(0, 1)] = Complex64::new(0.0, -0.5);
        p[(1, 0)] = Complex64::new(0.0, 0.5);
        let e = hermitian_eigh(&p).unwrap();
        assert!(e.values[0].abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
        assert!(e.reconstruct().max_abs_diff(&p) < 1e-15);
    }
}
