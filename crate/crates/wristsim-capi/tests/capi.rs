//! Exercises the C ABI the way a foreign binding would: JSON in, status
//! codes out, buffers copied through raw pointers.

// 0.5236 rad is the pinned step amplitude, not a rounding of pi/6
#![allow(clippy::approx_constant)]

use std::ffi::{CStr, CString};
use std::ptr;

use wristsim_capi::*;

fn run_default(duration: f64) -> *mut WristsimRun {
    let json = CString::new(format!("{{\"schema_version\":1,\"duration\":{duration}}}")).unwrap();
    let mut handle: *mut WristsimRun = ptr::null_mut();
    let status = unsafe { wristsim_run_scenario_json(json.as_ptr(), &mut handle) };
    assert_eq!(status, WristsimStatus::Ok);
    assert!(!handle.is_null());
    handle
}

#[test]
fn version_is_a_static_string() {
    let v = unsafe { CStr::from_ptr(wristsim_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn run_metrics_and_columns_round_trip() {
    let run = run_default(2.0);
    unsafe {
        let mut n = 0usize;
        assert_eq!(wristsim_run_sample_count(run, &mut n), WristsimStatus::Ok);
        assert_eq!(n, 2000);

        let mut rmse = 0.0;
        assert_eq!(
            wristsim_run_metric(run, WristsimMetric::Rmse, &mut rmse),
            WristsimStatus::Ok
        );
        assert!(rmse > 0.0 && rmse < 0.2);

        let mut settling = 0.0;
        assert_eq!(
            wristsim_run_metric(run, WristsimMetric::SettlingTime, &mut settling),
            WristsimStatus::Ok
        );
        assert!(settling < 3.0);

        let mut theta = vec![0.0f64; n];
        assert_eq!(
            wristsim_run_column(run, WristsimColumn::Theta, theta.as_mut_ptr(), n),
            WristsimStatus::Ok
        );
        assert_eq!(theta[0], 0.0);
        assert!((theta[n - 1] - 0.5236).abs() < 0.02);

        let mut sigma = vec![0.0f64; n];
        assert_eq!(
            wristsim_run_column(run, WristsimColumn::Sigma, sigma.as_mut_ptr(), n),
            WristsimStatus::Ok
        );
        assert!((sigma[0] + 26.18).abs() < 1e-9);

        let mut flag = true;
        assert_eq!(
            wristsim_run_range_exceeded(run, &mut flag),
            WristsimStatus::Ok
        );
        assert!(!flag);

        wristsim_run_free(run);
    }
}

#[test]
fn buffer_too_small_is_reported() {
    let run = run_default(1.0);
    unsafe {
        let mut buf = [0.0f64; 10];
        assert_eq!(
            wristsim_run_column(run, WristsimColumn::Theta, buf.as_mut_ptr(), buf.len()),
            WristsimStatus::BufferTooSmall
        );
        assert!(!wristsim_last_error().is_null());
        wristsim_run_free(run);
    }
}

#[test]
fn pid_runs_report_sigma_unavailable() {
    let json =
        CString::new(r#"{"schema_version":1,"duration":1.0,"controller":{"kind":"pid"}}"#).unwrap();
    let mut run: *mut WristsimRun = ptr::null_mut();
    unsafe {
        assert_eq!(
            wristsim_run_scenario_json(json.as_ptr(), &mut run),
            WristsimStatus::Ok
        );
        let mut buf = vec![0.0f64; 1000];
        assert_eq!(
            wristsim_run_column(run, WristsimColumn::Sigma, buf.as_mut_ptr(), buf.len()),
            WristsimStatus::Unavailable
        );
        wristsim_run_free(run);
    }
}

#[test]
fn bad_config_reports_error_with_message() {
    let json = CString::new(r#"{"schema_version":1,"bogus":1}"#).unwrap();
    let mut run: *mut WristsimRun = ptr::null_mut();
    unsafe {
        assert_eq!(
            wristsim_run_scenario_json(json.as_ptr(), &mut run),
            WristsimStatus::ConfigError
        );
        assert!(run.is_null());
        let msg = CStr::from_ptr(wristsim_last_error()).to_str().unwrap();
        assert!(msg.contains("bogus"), "message was {msg}");
    }
}

#[test]
fn null_arguments_are_rejected() {
    unsafe {
        let mut out = 0.0;
        assert_eq!(
            wristsim_run_metric(ptr::null(), WristsimMetric::Rmse, &mut out),
            WristsimStatus::NullPointer
        );
        let mut handle: *mut WristsimRun = ptr::null_mut();
        assert_eq!(
            wristsim_run_scenario_json(ptr::null(), &mut handle),
            WristsimStatus::NullPointer
        );
        wristsim_run_free(ptr::null_mut()); // must not crash
        wristsim_string_free(ptr::null_mut());
    }
}

#[test]
fn csv_and_summary_render_through_the_boundary() {
    let run = run_default(0.5);
    unsafe {
        let mut csv: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(wristsim_run_csv(run, &mut csv), WristsimStatus::Ok);
        let text = CStr::from_ptr(csv).to_str().unwrap();
        assert!(text.starts_with("t,theta_ref,theta,theta_dot,error,sigma,u_eq,u_sw,u_applied\n"));
        wristsim_string_free(csv);

        let mut summary: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(
            wristsim_run_summary_json(run, &mut summary),
            WristsimStatus::Ok
        );
        let text = CStr::from_ptr(summary).to_str().unwrap();
        assert!(text.contains("\"rmse\""));
        wristsim_string_free(summary);
        wristsim_run_free(run);
    }
}

#[test]
fn default_scenario_json_is_resolvable() {
    unsafe {
        let s = wristsim_default_scenario_json();
        assert!(!s.is_null());
        let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
        wristsim_string_free(s);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["plant"]["kind"], "lumped");
    }
}

#[test]
fn tip_position_binding_matches_closed_form() {
    unsafe {
        let (mut x, mut y) = (0.0, 0.0);
        assert_eq!(
            wristsim_tip_position(0.12, 0.5236, &mut x, &mut y),
            WristsimStatus::Ok
        );
        assert!((x - 0.060000127243512336).abs() < 1e-15);
        assert!((y - 0.01607702501004733).abs() < 1e-15);
        assert_eq!(
            wristsim_tip_position(-1.0, 0.1, &mut x, &mut y),
            WristsimStatus::ConfigError
        );
    }
}

#[test]
fn generated_header_exists_with_expected_symbols() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("include")
        .join("wristsim.h");
    let text = std::fs::read_to_string(header).expect("cbindgen header generated at build time");
    for symbol in [
        "wristsim_run_scenario_json",
        "wristsim_run_free",
        "wristsim_run_metric",
        "wristsim_run_column",
        "wristsim_run_csv",
        "wristsim_string_free",
        "wristsim_last_error",
        "WRISTSIM_STATUS_OK",
    ] {
        assert!(text.contains(symbol), "header missing {symbol}");
    }
    assert!(text.contains("typedef struct WristsimRun WristsimRun"));
}
