//! C ABI over `hellinger-core`.
//!
//! Every fallible function returns an [`HlStatus`] and writes its results
//! through out-pointers. On failure the message is kept per thread and can
//! be read with [`hl_last_error_message`]. Scenarios and reports are opaque
//! handles owned by the caller and released with their `_free` functions.
//! Strings returned by the library are released with [`hl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;

use hellinger_core::ensembles::{EnsembleKind, EnsembleParams, McmcConfig, Spectrum};
use hellinger_core::exactmoments::sqrt_trace_moments;
use hellinger_core::harness::{render_report, run_experiment, ExperimentConfig, ReportFormat, StatsReport};
use hellinger_core::hellinger::{asymptotic_mean_sq_affinity_hs, hellinger_summary, HellingerSummary, Scenario};
use hellinger_core::numlinalg::{affinity, ComplexMatrix, DensityMatrix};
use hellinger_core::Error;

/// Status codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HlStatus {
    Ok = 0,
    InvalidArgument = 1,
    Domain = 2,
    Pole = 3,
    NoConvergence = 4,
    NotPsd = 5,
    Unsupported = 6,
    Consistency = 7,
    Io = 8,
    NullPointer = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HlEnsemble {
    HilbertSchmidt = 0,
    BuresHall = 1,
}

impl From<HlEnsemble> for EnsembleKind {
    fn from(e: HlEnsemble) -> Self {
        match e {
            HlEnsemble::HilbertSchmidt => EnsembleKind::Hs,
            HlEnsemble::BuresHall => EnsembleKind::Bh,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HlFormat {
    Json = 0,
    Csv = 1,
}

/// Exact statistics of `D_H`. The gamma fields are NaN when `has_gamma` is false.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HlSummary {
    pub mean_affinity: f64,
    pub mean_sq_affinity: f64,
    pub mean_dh: f64,
    pub var_dh: f64,
    pub has_gamma: bool,
    pub gamma_shape: f64,
    pub gamma_rate: f64,
}

impl From<HellingerSummary> for HlSummary {
    fn from(s: HellingerSummary) -> Self {
        HlSummary {
            mean_affinity: s.mean_affinity,
            mean_sq_affinity: s.mean_sq_affinity,
            mean_dh: s.mean_dh,
            var_dh: s.var_dh,
            has_gamma: s.gamma_shape.is_some() && s.gamma_rate.is_some(),
            gamma_shape: s.gamma_shape.unwrap_or(f64::NAN),
            gamma_rate: s.gamma_rate.unwrap_or(f64::NAN),
        }
    }
}

/// Monte Carlo estimates from a finished experiment.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HlMonteCarlo {
    pub trials: usize,
    pub mean_dh: f64,
    pub var_dh: f64,
    pub stderr_mean: f64,
    pub stderr_var: f64,
    /// NaN when the exact variance is zero.
    pub z_mean: f64,
    pub z_var: f64,
}

/// Opaque scenario handle.
pub struct HlScenario(Scenario);

/// Opaque experiment report handle.
pub struct HlReport(StatsReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> HlStatus {
    match e {
        Error::InvalidArgument(_) => HlStatus::InvalidArgument,
        Error::Domain(_) => HlStatus::Domain,
        Error::Pole(_) => HlStatus::Pole,
        Error::NoConvergence { .. } => HlStatus::NoConvergence,
        Error::NotPsd { .. } => HlStatus::NotPsd,
        Error::Unsupported(_) => HlStatus::Unsupported,
        Error::Consistency(_) => HlStatus::Consistency,
        Error::Io(_) => HlStatus::Io,
    }
}

enum Fail {
    Core(Error),
    Null(&'static str),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HlStatus::Ok,
        Ok(Err(Fail::Core(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null(name))) => {
            set_last_error(format!("null pointer: {name}"));
            HlStatus::NullPointer
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            HlStatus::Panic
        }
    }
}

fn non_null<T>(p: *const T, name: &'static str) -> Result<*const T, Fail> {
    if p.is_null() {
        Err(Fail::Null(name))
    } else {
        Ok(p)
    }
}

fn non_null_mut<T>(p: *mut T, name: &'static str) -> Result<*mut T, Fail> {
    if p.is_null() {
        Err(Fail::Null(name))
    } else {
        Ok(p)
    }
}

/// Message of the most recent failure on this thread, or NULL.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn hl_clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// `<tr sqrt ρ>` and `<(tr sqrt ρ)^2>` for an `n x n` state with environment `m`.
///
/// # Safety
/// `first` and `second` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hl_sqrt_trace_moments(
    ensemble: HlEnsemble,
    n: usize,
    m: usize,
    first: *mut f64,
    second: *mut f64,
) -> HlStatus {
    guard(|| {
        let first = non_null_mut(first, "first")?;
        let second = non_null_mut(second, "second")?;
        let pair = sqrt_trace_moments(&EnsembleParams::new(ensemble.into(), n, m)?)?;
        *first = pair.first;
        *second = pair.second;
        Ok(())
    })
}

/// Large-dimension approximation of `<A^2>` for two independent
/// Hilbert-Schmidt states.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hl_asymptotic_mean_sq_affinity_hs(n: usize, m: usize, out: *mut f64) -> HlStatus {
    guard(|| {
        let out = non_null_mut(out, "out")?;
        *out = asymptotic_mean_sq_affinity_hs(n, m)?;
        Ok(())
    })
}

unsafe fn read_density(re: *const f64, im: *const f64, n: usize, name: &'static str) -> Result<DensityMatrix, Fail> {
    let re = non_null(re, name)?;
    let len = n.checked_mul(n).ok_or_else(|| Error::InvalidArgument(format!("dimension {n} overflows")))?;
    let re = std::slice::from_raw_parts(re, len);
    let im = if im.is_null() { None } else { Some(std::slice::from_raw_parts(im, len)) };
    let data = (0..len)
        .map(|k| Complex64::new(re[k], im.map_or(0.0, |v| v[k])))
        .collect();
    Ok(DensityMatrix::new(ComplexMatrix::from_row_major(n, n, data)?)?)
}

/// Affinity `tr(sqrt ρ1 sqrt ρ2)` of two `n x n` density matrices given as
/// row-major real and imaginary parts. An imaginary pointer may be NULL for
/// a real matrix.
///
/// # Safety
/// `re1` and `re2` (and `im1`, `im2` when non-null) must point to `n * n`
/// readable doubles. `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hl_affinity(
    n: usize,
    re1: *const f64,
    im1: *const f64,
    re2: *const f64,
    im2: *const f64,
    out: *mut f64,
) -> HlStatus {
    guard(|| {
        let out = non_null_mut(out, "out")?;
        let rho1 = read_density(re1, im1, n, "re1")?;
        let rho2 = read_density(re2, im2, n, "re2")?;
        *out = affinity(&rho1, &rho2)?;
        Ok(())
    })
}

unsafe fn emit_scenario(scenario: Scenario, out: *mut *mut HlScenario) -> Result<(), Fail> {
    *out = Box::into_raw(Box::new(HlScenario(scenario)));
    Ok(())
}

/// Random state of the given ensemble against the fixed state with
/// eigenvalues `spectrum[0..n]`.
///
/// # Safety
/// `spectrum` must point to `n` readable doubles and `out` must be valid
/// for writes. The handle written to `out` is released with
/// [`hl_scenario_free`].
#[no_mangle]
pub unsafe extern "C" fn hl_scenario_fixed_new(
    spectrum: *const f64,
    n: usize,
    ensemble: HlEnsemble,
    m: usize,
    out: *mut *mut HlScenario,
) -> HlStatus {
    guard(|| {
        let out = non_null_mut(out, "out")?;
        let spectrum = non_null(spectrum, "spectrum")?;
        let sigma = Spectrum::new(std::slice::from_raw_parts(spectrum, n).to_vec())?;
        let params = EnsembleParams::new(ensemble.into(), n, m)?;
        emit_scenario(Scenario::fixed_vs_random(sigma, params)?, out)
    })
}

/// Two independent random `n x n` states.
///
/// # Safety
/// `out` must be valid for writes. The handle written to `out` is released
/// with [`hl_scenario_free`].
#[no_mangle]
pub unsafe extern "C" fn hl_scenario_random_new(
    n: usize,
    ensemble_1: HlEnsemble,
    m_1: usize,
    ensemble_2: HlEnsemble,
    m_2: usize,
    out: *mut *mut HlScenario,
) -> HlStatus {
    guard(|| {
        let out = non_null_mut(out, "out")?;
        let p1 = EnsembleParams::new(ensemble_1.into(), n, m_1)?;
        let p2 = EnsembleParams::new(ensemble_2.into(), n, m_2)?;
        emit_scenario(Scenario::random_vs_random(p1, p2)?, out)
    })
}

/// # Safety
/// `scenario` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hl_scenario_free(scenario: *mut HlScenario) {
    if !scenario.is_null() {
        drop(Box::from_raw(scenario));
    }
}

/// # Safety
/// `scenario` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hl_scenario_summary(scenario: *const HlScenario, out: *mut HlSummary) -> HlStatus {
    guard(|| {
        let scenario = &*non_null(scenario, "scenario")?;
        let out = non_null_mut(out, "out")?;
        *out = hellinger_summary(&scenario.0)?.into();
        Ok(())
    })
}

/// Runs a Monte Carlo experiment. Bures-Hall chains use the default burn-in
/// and thinning. Results depend only on `seed` and `workers`.
///
/// # Safety
/// `scenario` must be a live handle and `out` valid for writes. The handle
/// written to `out` is released with [`hl_report_free`].
#[no_mangle]
pub unsafe extern "C" fn hl_experiment_run(
    scenario: *const HlScenario,
    trials: usize,
    seed: u64,
    workers: usize,
    histogram_bins: usize,
    out: *mut *mut HlReport,
) -> HlStatus {
    guard(|| {
        let scenario = &*non_null(scenario, "scenario")?;
        let out = non_null_mut(out, "out")?;
        let mut cfg = ExperimentConfig::new(scenario.0.clone(), trials, seed);
        cfg.mcmc = McmcConfig::default();
        cfg.workers = workers;
        cfg.histogram_bins = histogram_bins;
        *out = Box::into_raw(Box::new(HlReport(run_experiment(&cfg)?)));
        Ok(())
    })
}

/// # Safety
/// `report` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hl_report_free(report: *mut HlReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `report` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hl_report_exact(report: *const HlReport, out: *mut HlSummary) -> HlStatus {
    guard(|| {
        let report = &*non_null(report, "report")?;
        let out = non_null_mut(out, "out")?;
        *out = report.0.exact.into();
        Ok(())
    })
}

/// # Safety
/// `report` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hl_report_monte_carlo(report: *const HlReport, out: *mut HlMonteCarlo) -> HlStatus {
    guard(|| {
        let report = &*non_null(report, "report")?;
        let out = non_null_mut(out, "out")?;
        let mc = &report.0.monte_carlo;
        *out = HlMonteCarlo {
            trials: mc.trials,
            mean_dh: mc.mean_dh,
            var_dh: mc.var_dh,
            stderr_mean: mc.stderr_mean,
            stderr_var: mc.stderr_var,
            z_mean: mc.z_mean.unwrap_or(f64::NAN),
            z_var: mc.z_var.unwrap_or(f64::NAN),
        };
        Ok(())
    })
}

/// Renders the report as JSON or as the histogram CSV table.
///
/// # Safety
/// `report` must be a live handle and `out` valid for writes. The string
/// written to `out` is released with [`hl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hl_report_render(report: *const HlReport, format: HlFormat, out: *mut *mut c_char) -> HlStatus {
    guard(|| {
        let report = &*non_null(report, "report")?;
        let out = non_null_mut(out, "out")?;
        let format = match format {
            HlFormat::Json => ReportFormat::Json,
            HlFormat::Csv => ReportFormat::Csv,
        };
        let bytes = render_report(&report.0, format)?;
        let s = CString::new(bytes).map_err(|e| Error::Io(e.to_string()))?;
        *out = s.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
