use num_complex::Complex64;

use super::{conjugate_diagonal, hermitian_eigh, ComplexMatrix};
use crate::error::{invalid, Error, Result};

/// Entrywise Hermiticity tolerance for a density matrix.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Allowed deviation of the trace from 1.
pub const TRACE_TOL: f64 = 1e-12;
/// Eigenvalues in `[-PSD_SLACK, 0)` are rounding noise and clamp to 0;
/// anything below is a genuine PSD violation.
pub const PSD_SLACK: f64 = 1e-10;

const IMAG_RESIDUE_TOL: f64 = 1e-10;

/// Hermitian, positive-semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    /// Validates every density-matrix invariant, including the spectrum.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let rho = Self::from_hermitian_unchecked(m)?;
        rho.validate()?;
        Ok(rho)
    }

    /// Checks shape, Hermiticity and trace but not the spectrum. Samplers
    /// whose construction guarantees positivity use this to skip an
    /// eigendecomposition per draw.
    pub(crate) fn from_hermitian_unchecked(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() || m.rows() == 0 {
            return Err(invalid(format!(
                "density matrix must be square and non-empty, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(Self(m))
    }

    /// `diag(spectrum)`; the spectrum must already be a probability vector.
    pub fn diagonal(spectrum: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_diagonal(spectrum))
    }

    /// `I / n`.
    pub fn maximally_mixed(n: usize) -> Result<Self> {
        Self::diagonal(&vec![1.0 / n as f64; n])
    }

    /// Re-checks all invariants: Hermitian to 1e-12, unit trace to 1e-12,
    /// smallest eigenvalue at least -1e-10.
    pub fn validate(&self) -> Result<()> {
        let m = &self.0;
        if !m.is_finite() {
            return Err(invalid("density matrix has non-finite entries"));
        }
        let defect = m.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(invalid(format!("density matrix is not Hermitian (defect {defect:e})")));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(invalid(format!("density matrix trace is {tr}, expected 1")));
        }
        let eig = hermitian_eigh(m)?;
        let lowest = eig.values[0];
        if lowest < -PSD_SLACK {
            return Err(Error::NotPsd { eigenvalue: lowest });
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Result<ComplexMatrix> {
        matrix_sqrt_psd(&self.0)
    }

    /// Eigenvalues, ascending, with the PSD clamp applied.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        let eig = hermitian_eigh(&self.0)?;
        eig.values.iter().map(|&x| clamp_eigenvalue(x)).collect()
    }
}

fn clamp_eigenvalue(x: f64) -> Result<f64> {
    if x < -PSD_SLACK {
        Err(Error::NotPsd { eigenvalue: x })
    } else {
        Ok(x.max(0.0))
    }
}

/// Principal square root `V sqrt(Λ) V†` of a Hermitian PSD matrix.
///
/// Eigenvalues in `[-1e-10, 0)` are clamped to zero; anything more negative
/// is reported as [`Error::NotPsd`]. The input need not have unit trace.
pub fn matrix_sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if m.rows() == 1 && m.cols() == 1 {
        let x = m[(0, 0)];
        if x.im.abs() > PSD_SLACK {
            return Err(invalid("1x1 matrix is not Hermitian"));
        }
        let s = clamp_eigenvalue(x.re)?.sqrt();
        return Ok(ComplexMatrix::from_real_diagonal(&[s]));
    }
    let eig = hermitian_eigh(m)?;
    let roots = eig
        .values
        .iter()
        .map(|&x| clamp_eigenvalue(x).map(f64::sqrt))
        .collect::<Result<Vec<_>>>()?;
    Ok(conjugate_diagonal(&eig.basis, &roots))
}

/// `tr(A B)` for square matrices of equal size, without forming the product.
pub fn trace_of_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Complex64> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(invalid(format!(
            "trace of product needs equal square shapes, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let n = a.rows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    Ok(acc)
}

/// Affinity from precomputed square roots: `tr(sqrt1 sqrt2)`, clamped to `[0, 1]`.
pub fn affinity_from_roots(sqrt1: &ComplexMatrix, sqrt2: &ComplexMatrix) -> Result<f64> {
    let tr = trace_of_product(sqrt1, sqrt2)?;
    if tr.im.abs() > IMAG_RESIDUE_TOL {
        return Err(Error::Consistency(format!(
            "affinity has imaginary residue {:e}",
            tr.im
        )));
    }
    Ok(tr.re.clamp(0.0, 1.0))
}

/// Affinity `tr(sqrt(ρ1) sqrt(ρ2))`.
pub fn affinity(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    if rho1.dim() != rho2.dim() {
        return Err(invalid(format!(
            "dimension mismatch: {} vs {}",
            rho1.dim(),
            rho2.dim()
        )));
    }
    affinity_from_roots(&rho1.sqrt()?, &rho2.sqrt()?)
}

/// Squared Hellinger distance `2 - 2 A(ρ1, ρ2)`, in `[0, 2]`.
pub fn squared_hellinger(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    Ok(2.0 - 2.0 * affinity(rho1, rho2)?)
}
