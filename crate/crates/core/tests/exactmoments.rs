#![allow(clippy::excessive_precision)]

//! Closed-form moments against values obtained by direct quadrature of the
//! joint eigenvalue densities (computed offline at 20 significant digits).

use hellinger_core::ensembles::{EnsembleKind, EnsembleParams};
use hellinger_core::exactmoments::{
    mean_sqrt_trace_bh, mean_sqrt_trace_hs, second_moment_sqrt_trace_bh, second_moment_sqrt_trace_hs,
    sqrt_trace_moments, xi_matrix,
};

fn close(got: f64, want: f64, tol: f64) {
    assert!((got - want).abs() <= tol * want.abs(), "got {got:.17}, want {want:.17}");
}

// (n, m, first, second)
const HS_TABLE: &[(usize, usize, f64, f64)] = &[
    (2, 2, 1.2571428571428571, 1.589048622548086),
    (2, 3, 1.316017316017316, 1.736310778185108),
    (2, 4, 1.342657342657343, 1.805339913639962),
    (3, 3, 1.5023721376662553, 2.2640001692177684),
    (3, 4, 1.5692349110036551, 2.4668691284156444),
];

const BH_TABLE: &[(usize, usize, f64, f64)] = &[
    (2, 2, 1.188356908419485, 1.424413181578388),
    (2, 3, 1.293449696238895, 1.679061090525420),
    (2, 4, 1.331439127876681, 1.776069817743337),
    (3, 3, 1.4036458333333333, 1.980866019645261),
    (3, 4, 1.525390625, 2.3332481484308614),
];

#[test]
fn hs_moments_match_quadrature() {
    for &(n, m, first, second) in HS_TABLE {
        close(mean_sqrt_trace_hs(n, m).unwrap(), first, 1e-13);
        close(second_moment_sqrt_trace_hs(n, m).unwrap(), second, 1e-13);
    }
}

#[test]
fn bh_moments_match_quadrature() {
    for &(n, m, first, second) in BH_TABLE {
        close(mean_sqrt_trace_bh(n, m).unwrap(), first, 1e-11);
        close(second_moment_sqrt_trace_bh(n, m).unwrap(), second, 1e-11);
    }
}

#[test]
fn bh_square_three_by_three_means_are_rational() {
    close(mean_sqrt_trace_bh(3, 3).unwrap(), 539.0 / 384.0, 1e-13);
    close(mean_sqrt_trace_bh(3, 4).unwrap(), 781.0 / 512.0, 1e-13);
}

#[test]
fn moments_respect_bounds() {
    // 1 <= tr sqrt ρ <= sqrt n, and Cauchy-Schwarz between the two moments
    for kind in [EnsembleKind::Hs, EnsembleKind::Bh] {
        for n in 1..=30 {
            for m in [n, n + 1, 2 * n, 3 * n + 7] {
                let p = EnsembleParams::new(kind, n, m).unwrap();
                let mp = sqrt_trace_moments(&p).unwrap();
                let nf = n as f64;
                assert!(mp.first >= 1.0 - 1e-12 && mp.first <= nf.sqrt() + 1e-12, "{p}: {mp:?}");
                assert!(mp.second >= 1.0 - 1e-12 && mp.second <= nf + 1e-10, "{p}: {mp:?}");
                assert!(mp.second >= mp.first * mp.first - 1e-10, "{p}: {mp:?}");
            }
        }
    }
}

#[test]
fn moments_increase_with_environment_dimension() {
    for kind in [EnsembleKind::Hs, EnsembleKind::Bh] {
        for n in 2..=12 {
            let mut prev = 0.0;
            for m in n..n + 15 {
                let first = sqrt_trace_moments(&EnsembleParams::new(kind, n, m).unwrap()).unwrap().first;
                assert!(first > prev, "{kind} n={n} m={m}");
                prev = first;
            }
        }
    }
}

#[test]
fn large_environment_approaches_maximally_mixed() {
    for n in [2usize, 3, 5] {
        let p = EnsembleParams::new(EnsembleKind::Hs, n, 4000).unwrap();
        let mp = sqrt_trace_moments(&p).unwrap();
        close(mp.first, (n as f64).sqrt(), 5e-3);
    }
}

#[test]
fn xi_table_is_finite_for_moderate_sizes() {
    for alpha in [0, 1, 2, 5] {
        let xi = xi_matrix(10, alpha).unwrap();
        for j in 0..10 {
            for k in 0..10 {
                assert!(xi.get(j, k).is_finite());
            }
        }
    }
}
