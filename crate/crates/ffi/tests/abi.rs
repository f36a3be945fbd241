//! Exercises the C ABI exactly as a C caller would: through the exported
//! extern "C" functions, raw pointers and all, cross-checking the results
//! against the underlying library.

use std::ffi::CStr;
use std::ptr;

use approx::assert_relative_eq;
use steerwig::analysis;
use steerwig::factories::{epr_state, graph_state, Graph, Squeezing, ThermalNoise};
use steerwig_ffi::{
    steerwig_analyze, steerwig_epr_state_new, steerwig_graph_state_new,
    steerwig_last_error_message, steerwig_state_free, steerwig_state_modes, steerwig_version,
    steerwig_wigner_value, SteerwigReport, SteerwigState, SteerwigStatus,
};

/// Build an EPR handle through the ABI, panicking on failure.
unsafe fn epr_handle(s1_db: f64, s2_db: f64, n: f64) -> *mut SteerwigState {
    let mut state: *mut SteerwigState = ptr::null_mut();
    let status = steerwig_epr_state_new(s1_db, s2_db, n, &mut state);
    assert_eq!(status, SteerwigStatus::Ok);
    assert!(!state.is_null());
    state
}

unsafe fn analyze_handle(state: *const SteerwigState, f: usize, g: usize) -> SteerwigReport {
    let mut report = std::mem::zeroed::<SteerwigReport>();
    let status = steerwig_analyze(state, f, g, &mut report);
    assert_eq!(status, SteerwigStatus::Ok);
    report
}

fn last_error() -> String {
    let ptr = steerwig_last_error_message();
    assert!(!ptr.is_null(), "expected an error message");
    unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string()
}

#[test]
fn epr_report_matches_direct_library_call() {
    let s = Squeezing::from_db(4.0).unwrap();
    let n = ThermalNoise::new(1.2).unwrap();
    let pair = epr_state(s, s, n).extract_canonical_pair(0, 1).unwrap();
    let expected = analysis::analyze(&pair).unwrap();

    unsafe {
        let state = epr_handle(4.0, 4.0, 1.2);
        assert_eq!(steerwig_state_modes(state), 2);
        let report = analyze_handle(state, 0, 1);

        // Same code path on both sides, so equality is exact.
        assert_eq!(report.nu, expected.nu);
        assert_eq!(report.tr_conditional, expected.tr_conditional);
        assert_eq!(report.tr_conditional_opt, expected.tr_conditional_opt);
        assert_eq!(report.negativity_bare, 1);
        assert_eq!(report.negativity_steered, 1);
        assert_eq!(report.w_min_bare_defined, 1);
        assert_eq!(report.w_min_bare, expected.w_min_bare.unwrap());
        assert_eq!(report.w_min_opt_defined, 1);
        assert_eq!(report.w_min_opt, expected.w_min_opt.unwrap());
        let r = &expected.r_opt;
        assert_eq!(report.r_opt, [r[(0, 0)], r[(0, 1)], r[(1, 0)], r[(1, 1)]]);

        assert_relative_eq!(report.nu, 0.8247440813, max_relative = 1e-9);
        steerwig_state_free(state);
    }
}

#[test]
fn asymmetric_pair_is_rescued_by_the_optimal_symplectic() {
    unsafe {
        let state = epr_handle(7.0, 1.0, 1.2);
        let report = analyze_handle(state, 0, 1);

        assert!(report.tr_conditional > 2.0);
        assert_eq!(report.negativity_bare, 0);
        assert_eq!(report.negativity_steered, 1);
        assert!(report.tr_conditional_opt < 2.0);
        assert_eq!(report.w_min_opt_defined, 1);
        assert!(report.w_min_opt < 0.0);
        // Bare subtraction stays positive, so its minimum is defined but >= 0.
        assert_eq!(report.w_min_bare_defined, 1);
        assert!(report.w_min_bare >= 0.0);
        steerwig_state_free(state);
    }
}

#[test]
fn graph_state_report_matches_direct_library_call() {
    let edges_flat: [u32; 10] = [0, 1, 1, 2, 2, 3, 3, 4, 4, 5];
    let edges: Vec<(usize, usize)> =
        edges_flat.chunks(2).map(|e| (e[0] as usize, e[1] as usize)).collect();
    let graph = Graph::from_edges(6, &edges).unwrap();
    let s = Squeezing::from_db(3.0).unwrap();
    let n = ThermalNoise::new(1.05).unwrap();
    let pair = graph_state(&graph, s, n)
        .unwrap()
        .extract_canonical_pair(0, 1)
        .unwrap();
    let expected = analysis::analyze(&pair).unwrap();

    unsafe {
        let mut state: *mut SteerwigState = ptr::null_mut();
        let status =
            steerwig_graph_state_new(6, edges_flat.as_ptr(), 5, 3.0, 1.05, &mut state);
        assert_eq!(status, SteerwigStatus::Ok);
        assert_eq!(steerwig_state_modes(state), 6);

        let report = analyze_handle(state, 0, 1);
        assert_eq!(report.nu, expected.nu);
        assert_eq!(report.tr_conditional, expected.tr_conditional);
        steerwig_state_free(state);
    }
}

#[test]
fn wigner_value_at_the_origin_equals_the_reported_minimum() {
    // The EPR state has zero mean, so the post-subtraction Wigner minimum
    // sits at the origin for either choice of pre-operation.
    unsafe {
        let state = epr_handle(4.0, 4.0, 1.2);
        let report = analyze_handle(state, 0, 1);

        let mut bare = f64::NAN;
        let status = steerwig_wigner_value(state, 0, 1, 0, 0.0, 0.0, &mut bare);
        assert_eq!(status, SteerwigStatus::Ok);
        assert_eq!(bare, report.w_min_bare);

        let mut opt = f64::NAN;
        let status = steerwig_wigner_value(state, 0, 1, 1, 0.0, 0.0, &mut opt);
        assert_eq!(status, SteerwigStatus::Ok);
        assert_eq!(opt, report.w_min_opt);

        // Far from the origin the function decays to zero from above.
        let mut tail = f64::NAN;
        let status = steerwig_wigner_value(state, 0, 1, 0, 40.0, 0.0, &mut tail);
        assert_eq!(status, SteerwigStatus::Ok);
        assert!(tail.abs() < 1e-12);
        steerwig_state_free(state);
    }
}

#[test]
fn vacuum_subtraction_mode_reports_no_photon() {
    unsafe {
        let state = epr_handle(0.0, 0.0, 1.0);
        // The report itself is fine; only the Wigner minima are undefined.
        let report = analyze_handle(state, 0, 1);
        assert_eq!(report.w_min_bare_defined, 0);
        assert_eq!(report.w_min_opt_defined, 0);
        assert_eq!(report.w_min_bare, 0.0);

        let mut value = f64::NAN;
        let status = steerwig_wigner_value(state, 0, 1, 0, 0.0, 0.0, &mut value);
        assert_eq!(status, SteerwigStatus::NoPhoton);
        assert!(last_error().contains("no photon"));
        steerwig_state_free(state);
    }
}

#[test]
fn pointer_and_domain_errors_map_to_distinct_statuses() {
    unsafe {
        // Null handles and out-pointers.
        let mut report = std::mem::zeroed::<SteerwigReport>();
        assert_eq!(
            steerwig_analyze(ptr::null(), 0, 1, &mut report),
            SteerwigStatus::NullPointer
        );
        let state = epr_handle(4.0, 4.0, 1.2);
        assert_eq!(
            steerwig_analyze(state, 0, 1, ptr::null_mut()),
            SteerwigStatus::NullPointer
        );

        // Out-of-range mode index and coincident modes.
        assert_eq!(
            steerwig_analyze(state, 0, 7, &mut report),
            SteerwigStatus::InvalidArgument
        );
        assert!(last_error().contains("out of range"));
        assert_eq!(
            steerwig_analyze(state, 1, 1, &mut report),
            SteerwigStatus::InvalidArgument
        );
        steerwig_state_free(state);

        // Domain errors in the constructors.
        let mut bad: *mut SteerwigState = ptr::null_mut();
        assert_eq!(
            steerwig_epr_state_new(4.0, 4.0, 0.5, &mut bad),
            SteerwigStatus::InvalidArgument
        );
        assert!(bad.is_null());
        assert!(last_error().contains("n >= 1"));

        let edges: [u32; 2] = [0, 9];
        assert_eq!(
            steerwig_graph_state_new(3, edges.as_ptr(), 1, 3.0, 1.0, &mut bad),
            SteerwigStatus::InvalidArgument
        );

        // Null-tolerant helpers.
        steerwig_state_free(ptr::null_mut());
        assert_eq!(steerwig_state_modes(ptr::null()), 0);
    }
}

#[test]
fn version_matches_the_crate_metadata() {
    let version = unsafe { CStr::from_ptr(steerwig_version()) }.to_str().unwrap();
    assert_eq!(version, env!("CARGO_PKG_VERSION"));
}

#[test]
fn committed_header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/include/steerwig.h"
    ))
    .expect("the generated header is committed alongside the crate");
    for symbol in [
        "steerwig_epr_state_new",
        "steerwig_graph_state_new",
        "steerwig_state_free",
        "steerwig_state_modes",
        "steerwig_analyze",
        "steerwig_wigner_value",
        "steerwig_last_error_message",
        "steerwig_version",
        "SteerwigStatus",
        "SteerwigReport",
        "typedef struct SteerwigState SteerwigState",
    ] {
        assert!(header.contains(symbol), "header is missing `{symbol}`");
    }
}
