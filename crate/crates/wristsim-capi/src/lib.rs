//! C ABI over the wristsim library.
//!
//! Scenarios cross the boundary as JSON documents; completed runs are held
//! behind opaque handles with accessor functions for metrics, columns, and
//! rendered reports. Every fallible call returns a status code; the last
//! failure message is kept per thread and readable until the next call on
//! that thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use wristsim::error::Error;
use wristsim::harness::{self, RunRecord};
use wristsim::report;
use wristsim::scenario::RawScenario;

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WristsimStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ConfigError = 3,
    SimulationError = 4,
    /// The requested value does not exist for this run (e.g. the sliding
    /// surface of a PID run, or a settling time that never occurred).
    Unavailable = 5,
    /// The destination buffer is too small.
    BufferTooSmall = 6,
}

/// Scalar metrics of a completed run.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WristsimMetric {
    Rmse = 0,
    SettlingTime = 1,
    SteadyStateError = 2,
    ChatteringIndex = 3,
}

/// Time-series columns of a completed run.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WristsimColumn {
    Time = 0,
    ThetaRef = 1,
    Theta = 2,
    ThetaDot = 3,
    Error = 4,
    Sigma = 5,
    UEq = 6,
    USw = 7,
    UApplied = 8,
}

/// Opaque handle to a completed closed-loop run.
pub struct WristsimRun {
    record: RunRecord,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("error").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> WristsimStatus {
    match err {
        Error::Simulation(_) | Error::Integration(_) | Error::Stability { .. } => {
            WristsimStatus::SimulationError
        }
        _ => WristsimStatus::ConfigError,
    }
}

/// Message of the most recent failure on this thread, or NULL when the last
/// call succeeded. The pointer stays valid until the next failing call on
/// the same thread.
#[no_mangle]
pub extern "C" fn wristsim_last_error() -> *const c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(c) => c.as_ptr(),
        None => ptr::null(),
    })
}

/// Library version as a static NUL-terminated string; never freed.
#[no_mangle]
pub extern "C" fn wristsim_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr() as *const c_char
}

/// The fully resolved default scenario as a JSON document. Free the result
/// with `wristsim_string_free`.
#[no_mangle]
pub extern "C" fn wristsim_default_scenario_json() -> *mut c_char {
    let scenario = wristsim::scenario::Scenario::default_scenario();
    let text = serde_json::to_string_pretty(&scenario).expect("scenario serializes");
    CString::new(text)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Parse a scenario JSON document, run it, and hand back an opaque run
/// handle through `out`. Free the handle with `wristsim_run_free`.
///
/// # Safety
/// `scenario_json` must point to a NUL-terminated string and `out` must be
/// a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn wristsim_run_scenario_json(
    scenario_json: *const c_char,
    out: *mut *mut WristsimRun,
) -> WristsimStatus {
    if scenario_json.is_null() || out.is_null() {
        set_error("null pointer argument".into());
        return WristsimStatus::NullPointer;
    }
    let text = match CStr::from_ptr(scenario_json).to_str() {
        Ok(t) => t,
        Err(_) => {
            set_error("scenario JSON is not valid UTF-8".into());
            return WristsimStatus::InvalidUtf8;
        }
    };
    let scenario = match RawScenario::from_json(text).and_then(|raw| raw.resolve()) {
        Ok(s) => s,
        Err(e) => {
            set_error(e.to_string());
            return status_of(&e);
        }
    };
    match harness::run(&scenario) {
        Ok(record) => {
            *out = Box::into_raw(Box::new(WristsimRun { record }));
            WristsimStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}

/// Release a run handle. NULL is ignored.
///
/// # Safety
/// `run` must have come from `wristsim_run_scenario_json` and not yet been
/// freed.
#[no_mangle]
pub unsafe extern "C" fn wristsim_run_free(run: *mut WristsimRun) {
    if !run.is_null() {
        drop(Box::from_raw(run));
    }
}

/// Number of logged samples in a run.
///
/// # Safety
/// `run` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wristsim_run_sample_count(
    run: *const WristsimRun,
    out: *mut usize,
) -> WristsimStatus {
    if run.is_null() || out.is_null() {
        set_error("null pointer argument".into());
        return WristsimStatus::NullPointer;
    }
    *out = (*run).record.log.len();
    WristsimStatus::Ok
}

/// Read one scalar metric. A settling time that never occurred reports
/// `Unavailable` and leaves `out` untouched.
///
/// # Safety
/// `run` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wristsim_run_metric(
    run: *const WristsimRun,
    metric: WristsimMetric,
    out: *mut f64,
) -> WristsimStatus {
    if run.is_null() || out.is_null() {
        set_error("null pointer argument".into());
        return WristsimStatus::NullPointer;
    }
    let m = &(*run).record.metrics;
    let value = match metric {
        WristsimMetric::Rmse => m.rmse,
        WristsimMetric::SteadyStateError => m.steady_state_error,
        WristsimMetric::ChatteringIndex => m.chattering_index,
        WristsimMetric::SettlingTime => match m.settling_time {
            Some(t) => t,
            None => {
                set_error("response never settled".into());
                return WristsimStatus::Unavailable;
            }
        },
    };
    *out = value;
    WristsimStatus::Ok
}

/// True when the run left the +/-50 degree motion range.
///
/// # Safety
/// `run` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wristsim_run_range_exceeded(
    run: *const WristsimRun,
    out: *mut bool,
) -> WristsimStatus {
    if run.is_null() || out.is_null() {
        set_error("null pointer argument".into());
        return WristsimStatus::NullPointer;
    }
    *out = (*run).record.range_exceeded;
    WristsimStatus::Ok
}

/// Copy one time-series column into `buffer` (capacity `len` doubles).
/// Sliding-surface columns of a PID run report `Unavailable`.
///
/// # Safety
/// `run` must be valid and `buffer` must point to at least `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn wristsim_run_column(
    run: *const WristsimRun,
    column: WristsimColumn,
    buffer: *mut f64,
    len: usize,
) -> WristsimStatus {
    if run.is_null() || buffer.is_null() {
        set_error("null pointer argument".into());
        return WristsimStatus::NullPointer;
    }
    let log = &(*run).record.log;
    let n = log.len();
    if len < n {
        set_error(format!("buffer holds {len} samples, run has {n}"));
        return WristsimStatus::BufferTooSmall;
    }
    let dst = std::slice::from_raw_parts_mut(buffer, n);
    let copy_opt = |src: &Option<Vec<f64>>, dst: &mut [f64]| -> WristsimStatus {
        match src {
            Some(v) => {
                dst.copy_from_slice(v);
                WristsimStatus::Ok
            }
            None => {
                set_error("column not present for this controller".into());
                WristsimStatus::Unavailable
            }
        }
    };
    match column {
        WristsimColumn::Time => dst.copy_from_slice(&log.t),
        WristsimColumn::ThetaRef => dst.copy_from_slice(&log.theta_ref),
        WristsimColumn::Theta => dst.copy_from_slice(&log.theta),
        WristsimColumn::ThetaDot => dst.copy_from_slice(&log.theta_dot),
        WristsimColumn::UApplied => dst.copy_from_slice(&log.u),
        WristsimColumn::Error => {
            for (i, cell) in dst.iter_mut().enumerate() {
                *cell = log.error(i);
            }
        }
        WristsimColumn::Sigma => return copy_opt(&log.sigma, dst),
        WristsimColumn::UEq => return copy_opt(&log.u_eq, dst),
        WristsimColumn::USw => return copy_opt(&log.u_sw, dst),
    }
    WristsimStatus::Ok
}

/// Render the run's time series as CSV. Free with `wristsim_string_free`.
///
/// # Safety
/// `run` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wristsim_run_csv(
    run: *const WristsimRun,
    out: *mut *mut c_char,
) -> WristsimStatus {
    if run.is_null() || out.is_null() {
        set_error("null pointer argument".into());
        return WristsimStatus::NullPointer;
    }
    let text = report::time_series_csv(&(*run).record);
    match CString::new(text) {
        Ok(c) => {
            *out = c.into_raw();
            WristsimStatus::Ok
        }
        Err(_) => {
            set_error("CSV contained an interior NUL".into());
            WristsimStatus::ConfigError
        }
    }
}

/// Render the run's summary report as JSON. Free with
/// `wristsim_string_free`.
///
/// # Safety
/// `run` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wristsim_run_summary_json(
    run: *const WristsimRun,
    out: *mut *mut c_char,
) -> WristsimStatus {
    if run.is_null() || out.is_null() {
        set_error("null pointer argument".into());
        return WristsimStatus::NullPointer;
    }
    let text = report::summary_json(&(*run).record);
    match CString::new(text) {
        Ok(c) => {
            *out = c.into_raw();
            WristsimStatus::Ok
        }
        Err(_) => {
            set_error("summary contained an interior NUL".into());
            WristsimStatus::ConfigError
        }
    }
}

/// Free a string produced by this library. NULL is ignored.
///
/// # Safety
/// `s` must have been returned by a wristsim function and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wristsim_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Constant-curvature tip position: x = R sin(theta), y = R (1 - cos(theta)).
///
/// # Safety
/// `out_x` and `out_y` must be valid writable pointers.
#[no_mangle]
pub unsafe extern "C" fn wristsim_tip_position(
    radius: f64,
    theta: f64,
    out_x: *mut f64,
    out_y: *mut f64,
) -> WristsimStatus {
    if out_x.is_null() || out_y.is_null() {
        set_error("null pointer argument".into());
        return WristsimStatus::NullPointer;
    }
    match wristsim::beam::tip_position(radius, theta) {
        Ok(pose) => {
            *out_x = pose.x_p;
            *out_y = pose.y_p;
            WristsimStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}
