use std::ffi::CStr;
use std::ptr;

use hellinger_ffi::*;

fn last_error() -> String {
    let p = hl_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn moments_match_known_values() {
    let (mut first, mut second) = (0.0, 0.0);
    let st = unsafe { hl_sqrt_trace_moments(HlEnsemble::BuresHall, 3, 3, &mut first, &mut second) };
    assert_eq!(st, HlStatus::Ok);
    assert!((first - 539.0 / 384.0).abs() < 1e-13);
    let st = unsafe { hl_sqrt_trace_moments(HlEnsemble::HilbertSchmidt, 3, 4, &mut first, &mut second) };
    assert_eq!(st, HlStatus::Ok);
    assert!((first - 1.5692349110036551).abs() < 1e-13);
    assert!((second - 2.4668691284156444).abs() < 1e-13);
}

#[test]
fn errors_set_status_and_message() {
    let (mut first, mut second) = (0.0, 0.0);
    let st = unsafe { hl_sqrt_trace_moments(HlEnsemble::HilbertSchmidt, 4, 2, &mut first, &mut second) };
    assert_ne!(st, HlStatus::Ok);
    assert!(!last_error().is_empty());

    let st = unsafe { hl_sqrt_trace_moments(HlEnsemble::HilbertSchmidt, 3, 3, ptr::null_mut(), &mut second) };
    assert_eq!(st, HlStatus::NullPointer);
    assert!(last_error().contains("first"));

    hl_clear_last_error();
    assert!(hl_last_error_message().is_null());
}

#[test]
fn affinity_of_diagonal_states() {
    let a = [0.5, 0.0, 0.0, 0.5];
    let b = [1.0, 0.0, 0.0, 0.0];
    let mut out = 0.0;
    let st = unsafe { hl_affinity(2, a.as_ptr(), ptr::null(), b.as_ptr(), ptr::null(), &mut out) };
    assert_eq!(st, HlStatus::Ok);
    assert!((out - 0.5f64.sqrt()).abs() < 1e-12);

    let bad = [2.0, 0.0, 0.0, 0.5];
    let st = unsafe { hl_affinity(2, bad.as_ptr(), ptr::null(), b.as_ptr(), ptr::null(), &mut out) };
    assert_ne!(st, HlStatus::Ok);
}

#[test]
fn scenario_summary_and_experiment() {
    unsafe {
        let mut scn = ptr::null_mut();
        let st = hl_scenario_random_new(3, HlEnsemble::HilbertSchmidt, 4, HlEnsemble::BuresHall, 6, &mut scn);
        assert_eq!(st, HlStatus::Ok);

        let mut summary = std::mem::zeroed::<HlSummary>();
        assert_eq!(hl_scenario_summary(scn, &mut summary), HlStatus::Ok);
        assert!(summary.mean_dh > 0.0 && summary.var_dh > 0.0);
        assert!(summary.has_gamma);
        assert!((summary.mean_dh - (2.0 - 2.0 * summary.mean_affinity)).abs() < 1e-15);

        let mut report = ptr::null_mut();
        assert_eq!(hl_experiment_run(scn, 2000, 7, 2, 20, &mut report), HlStatus::Ok);
        let mut exact = std::mem::zeroed::<HlSummary>();
        assert_eq!(hl_report_exact(report, &mut exact), HlStatus::Ok);
        assert_eq!(exact, summary);
        let mut mc = std::mem::zeroed::<HlMonteCarlo>();
        assert_eq!(hl_report_monte_carlo(report, &mut mc), HlStatus::Ok);
        assert_eq!(mc.trials, 2000);
        assert!(mc.z_mean.abs() < 5.0);

        let mut json = ptr::null_mut();
        assert_eq!(hl_report_render(report, HlFormat::Json, &mut json), HlStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        hl_string_free(json);
        assert!(text.contains("\"monte_carlo\""));

        let mut csv = ptr::null_mut();
        assert_eq!(hl_report_render(report, HlFormat::Csv, &mut csv), HlStatus::Ok);
        let rows = CStr::from_ptr(csv).to_str().unwrap().lines().count();
        hl_string_free(csv);
        assert_eq!(rows, 21);

        hl_report_free(report);
        hl_scenario_free(scn);
    }
}

#[test]
fn fixed_scenario_validation() {
    unsafe {
        let sigma = [0.2, 0.3, 0.5];
        let mut scn = ptr::null_mut();
        assert_eq!(
            hl_scenario_fixed_new(sigma.as_ptr(), 3, HlEnsemble::HilbertSchmidt, 5, &mut scn),
            HlStatus::Ok
        );
        hl_scenario_free(scn);

        let bad = [0.2, 0.3, 0.6];
        let mut scn = ptr::null_mut();
        let st = hl_scenario_fixed_new(bad.as_ptr(), 3, HlEnsemble::HilbertSchmidt, 5, &mut scn);
        assert_ne!(st, HlStatus::Ok);
        assert!(scn.is_null());

        let mut report = ptr::null_mut();
        assert_eq!(hl_experiment_run(ptr::null(), 10, 0, 1, 10, &mut report), HlStatus::NullPointer);
        hl_scenario_free(ptr::null_mut());
        hl_report_free(ptr::null_mut());
        hl_string_free(ptr::null_mut());
    }
}

#[test]
fn version_and_header() {
    let v = unsafe { CStr::from_ptr(hl_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/hellinger.h")).unwrap();
    for name in ["hl_scenario_random_new", "hl_experiment_run", "HL_STATUS_PANIC", "HlSummary"] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
