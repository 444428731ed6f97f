//! Complex matrices, random matrix generators, Hermitian eigendecomposition
//! and PSD square roots.

mod density;
mod eigh;
mod matrix;
mod random;

pub use density::{
    affinity, affinity_from_roots, matrix_sqrt_psd, squared_hellinger, trace_of_product,
    DensityMatrix, HERMITIAN_TOL, PSD_SLACK, TRACE_TOL,
};
pub use eigh::{conjugate_diagonal, hermitian_eigh, EigenDecomposition};
pub use matrix::ComplexMatrix;
pub use random::{complex_normal, sample_ginibre, sample_haar_unitary};
