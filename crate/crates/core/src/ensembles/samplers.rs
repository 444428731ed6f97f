use num_complex::Complex64;
use rand::Rng;

use super::{EnsembleKind, EnsembleParams, Spectrum};
use crate::error::{invalid, Error, Result};
use crate::numlinalg::{conjugate_diagonal, sample_ginibre, sample_haar_unitary, ComplexMatrix, DensityMatrix};

/// Divides by the (real) trace entrywise so a 1x1 input maps to exactly 1.
fn normalize_trace(mut w: ComplexMatrix) -> Result<DensityMatrix> {
    let tr = w.trace().re;
    if !(tr > 0.0) {
        return Err(Error::Consistency(format!("Wishart trace is {tr}")));
    }
    for z in w.as_mut_slice() {
        *z /= tr;
    }
    DensityMatrix::from_hermitian_unchecked(w)
}

/// Hilbert-Schmidt draw `GG† / tr(GG†)` with `G` an `n x m` Ginibre matrix.
pub fn sample_hs_density<R: Rng + ?Sized>(params: &EnsembleParams, rng: &mut R) -> Result<DensityMatrix> {
    if params.kind() != EnsembleKind::Hs {
        return Err(invalid(format!("sample_hs_density called with {params}")));
    }
    let g = sample_ginibre(params.n(), params.m(), rng)?;
    normalize_trace(g.gram())
}

/// `U diag(λ) U†` with `U` Haar.
pub fn assemble_density_from_spectrum<R: Rng + ?Sized>(spectrum: &Spectrum, rng: &mut R) -> Result<DensityMatrix> {
    let n = spectrum.len();
    if n == 1 {
        return DensityMatrix::from_hermitian_unchecked(ComplexMatrix::from_real_diagonal(&[1.0]));
    }
    let u = sample_haar_unitary(n, rng)?;
    DensityMatrix::from_hermitian_unchecked(conjugate_diagonal(&u, spectrum.values()))
}

/// `U diag(sqrt λ) U†` with `U` Haar: the square root of the density that
/// [`assemble_density_from_spectrum`] would produce, without an
/// eigendecomposition.
pub fn assemble_sqrt_from_spectrum<R: Rng + ?Sized>(spectrum: &Spectrum, rng: &mut R) -> Result<ComplexMatrix> {
    let n = spectrum.len();
    let roots: Vec<f64> = spectrum.values().iter().map(|x| x.sqrt()).collect();
    if n == 1 {
        return Ok(ComplexMatrix::from_real_diagonal(&roots));
    }
    let u = sample_haar_unitary(n, rng)?;
    Ok(conjugate_diagonal(&u, &roots))
}

/// Bures-Hall draw from the square matrix model
/// `(1 + U) GG† (1 + U†) / tr[...]`, `U` Haar, `G` square Ginibre.
///
/// Only `m = n` is supported: for `m != n` the unitary factor must carry the
/// weight `|det(1 + U)|^{2(m-n)}` and is no longer Haar.
pub fn sample_bh_density_square<R: Rng + ?Sized>(params: &EnsembleParams, rng: &mut R) -> Result<DensityMatrix> {
    if params.kind() != EnsembleKind::Bh {
        return Err(invalid(format!("sample_bh_density_square called with {params}")));
    }
    if params.alpha() != 0 {
        return Err(Error::Unsupported(format!(
            "the Bures-Hall matrix model needs m = n (got n = {}, m = {}); for m != n its unitary factor is not Haar distributed, use the MCMC spectrum sampler",
            params.n(),
            params.m()
        )));
    }
    let n = params.n();
    let g = sample_ginibre(n, n, rng)?;
    let mut a = sample_haar_unitary(n, rng)?;
    for i in 0..n {
        a[(i, i)] += Complex64::new(1.0, 0.0);
    }
    normalize_trace((&a * &g).gram())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numlinalg::{hermitian_eigh, matrix_sqrt_psd};
    use crate::rng::seeded;

    #[test]
    fn hs_scalar_case_is_exactly_one() {
        let p = EnsembleParams::new(EnsembleKind::Hs, 1, 3).unwrap();
        let mut rng = seeded(1);
        for _ in 0..100 {
            let rho = sample_hs_density(&p, &mut rng).unwrap();
            assert_eq!(rho.matrix()[(0, 0)], Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn hs_draws_are_valid_density_matrices() {
        let mut rng = seeded(2);
        for (n, m) in [(2, 2), (3, 5), (5, 10), (6, 6)] {
            let p = EnsembleParams::new(EnsembleKind::Hs, n, m).unwrap();
            for _ in 0..50 {
                sample_hs_density(&p, &mut rng).unwrap().validate().unwrap();
            }
        }
    }

    #[test]
    fn hs_sqrt_squares_back() {
        let p = EnsembleParams::new(EnsembleKind::Hs, 4, 6).unwrap();
        let mut rng = seeded(3);
        for _ in 0..20 {
            let rho = sample_hs_density(&p, &mut rng).unwrap();
            let s = rho.sqrt().unwrap();
            assert!((&s * &s).max_abs_diff(rho.matrix()) < 1e-9);
            // fourth root to the fourth power
            let q = matrix_sqrt_psd(&s).unwrap();
            let q2 = &q * &q;
            assert!((&q2 * &q2).max_abs_diff(rho.matrix()) < 1e-7);
        }
    }

    #[test]
    fn sampler_rejects_wrong_kind() {
        let mut rng = seeded(4);
        let bh = EnsembleParams::new(EnsembleKind::Bh, 2, 2).unwrap();
        let hs = EnsembleParams::new(EnsembleKind::Hs, 2, 2).unwrap();
        assert!(sample_hs_density(&bh, &mut rng).is_err());
        assert!(sample_bh_density_square(&hs, &mut rng).is_err());
    }

    #[test]
    fn bh_square_model_rejects_rectangular() {
        let mut rng = seeded(5);
        let p = EnsembleParams::new(EnsembleKind::Bh, 2, 3).unwrap();
        assert!(matches!(sample_bh_density_square(&p, &mut rng), Err(Error::Unsupported(_))));
    }

    #[test]
    fn bh_square_model_draws_are_valid() {
        let mut rng = seeded(6);
        let one = EnsembleParams::new(EnsembleKind::Bh, 1, 1).unwrap();
        assert_eq!(
            sample_bh_density_square(&one, &mut rng).unwrap().matrix()[(0, 0)],
            Complex64::new(1.0, 0.0)
        );
        let p = EnsembleParams::new(EnsembleKind::Bh, 4, 4).unwrap();
        for _ in 0..50 {
            sample_bh_density_square(&p, &mut rng).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn assembled_density_keeps_spectrum() {
        let mut rng = seeded(7);
        let one = Spectrum::new(vec![1.0]).unwrap();
        assert_eq!(
            assemble_density_from_spectrum(&one, &mut rng).unwrap().matrix()[(0, 0)],
            Complex64::new(1.0, 0.0)
        );
        let half = Spectrum::new(vec![0.5, 0.5]).unwrap();
        let rho = assemble_density_from_spectrum(&half, &mut rng).unwrap();
        assert!(rho.matrix().max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.5, 0.5])) < 1e-15);

        let s = Spectrum::new(vec![0.3, 0.7]).unwrap();
        let rho = assemble_density_from_spectrum(&s, &mut rng).unwrap();
        rho.validate().unwrap();
        let e = hermitian_eigh(rho.matrix()).unwrap();
        assert!((e.values[0] - 0.3).abs() < 1e-12 && (e.values[1] - 0.7).abs() < 1e-12);
    }

    #[test]
    fn assembled_sqrt_matches_sqrt_of_assembled_density() {
        let s = Spectrum::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let root = assemble_sqrt_from_spectrum(&s, &mut seeded(8)).unwrap();
        let rho = assemble_density_from_spectrum(&s, &mut seeded(8)).unwrap();
        assert!(root.max_abs_diff(&rho.sqrt().unwrap()) < 1e-12);
    }
}
