#ifndef WRISTSIM_H
#define WRISTSIM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible function.
 */
typedef enum {
  WRISTSIM_STATUS_OK = 0,
  WRISTSIM_STATUS_NULL_POINTER = 1,
  WRISTSIM_STATUS_INVALID_UTF8 = 2,
  WRISTSIM_STATUS_CONFIG_ERROR = 3,
  WRISTSIM_STATUS_SIMULATION_ERROR = 4,
  /**
   * The requested value does not exist for this run (e.g. the sliding
   * surface of a PID run, or a settling time that never occurred).
   */
  WRISTSIM_STATUS_UNAVAILABLE = 5,
  /**
   * The destination buffer is too small.
   */
  WRISTSIM_STATUS_BUFFER_TOO_SMALL = 6,
} WristsimStatus;

/**
 * Scalar metrics of a completed run.
 */
typedef enum {
  WRISTSIM_METRIC_RMSE = 0,
  WRISTSIM_METRIC_SETTLING_TIME = 1,
  WRISTSIM_METRIC_STEADY_STATE_ERROR = 2,
  WRISTSIM_METRIC_CHATTERING_INDEX = 3,
} WristsimMetric;

/**
 * Time-series columns of a completed run.
 */
typedef enum {
  WRISTSIM_COLUMN_TIME = 0,
  WRISTSIM_COLUMN_THETA_REF = 1,
  WRISTSIM_COLUMN_THETA = 2,
  WRISTSIM_COLUMN_THETA_DOT = 3,
  WRISTSIM_COLUMN_ERROR = 4,
  WRISTSIM_COLUMN_SIGMA = 5,
  WRISTSIM_COLUMN_U_EQ = 6,
  WRISTSIM_COLUMN_U_SW = 7,
  WRISTSIM_COLUMN_U_APPLIED = 8,
} WristsimColumn;

/**
 * Opaque handle to a completed closed-loop run.
 */
typedef struct WristsimRun WristsimRun;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread, or NULL when the last
 * call succeeded. The pointer stays valid until the next failing call on
 * the same thread.
 */
const char *wristsim_last_error(void);

/**
 * Library version as a static NUL-terminated string; never freed.
 */
const char *wristsim_version(void);

/**
 * The fully resolved default scenario as a JSON document. Free the result
 * with `wristsim_string_free`.
 */
char *wristsim_default_scenario_json(void);

/**
 * Parse a scenario JSON document, run it, and hand back an opaque run
 * handle through `out`. Free the handle with `wristsim_run_free`.
 *
 * # Safety
 * `scenario_json` must point to a NUL-terminated string and `out` must be
 * a valid writable pointer.
 */
WristsimStatus wristsim_run_scenario_json(const char *scenario_json, WristsimRun **out);

/**
 * Release a run handle. NULL is ignored.
 *
 * # Safety
 * `run` must have come from `wristsim_run_scenario_json` and not yet been
 * freed.
 */
void wristsim_run_free(WristsimRun *run);

/**
 * Number of logged samples in a run.
 *
 * # Safety
 * `run` and `out` must be valid pointers.
 */
WristsimStatus wristsim_run_sample_count(const WristsimRun *run, size_t *out);

/**
 * Read one scalar metric. A settling time that never occurred reports
 * `Unavailable` and leaves `out` untouched.
 *
 * # Safety
 * `run` and `out` must be valid pointers.
 */
WristsimStatus wristsim_run_metric(const WristsimRun *run, WristsimMetric metric, double *out);

/**
 * True when the run left the +/-50 degree motion range.
 *
 * # Safety
 * `run` and `out` must be valid pointers.
 */
WristsimStatus wristsim_run_range_exceeded(const WristsimRun *run, bool *out);

/**
 * Copy one time-series column into `buffer` (capacity `len` doubles).
 * Sliding-surface columns of a PID run report `Unavailable`.
 *
 * # Safety
 * `run` must be valid and `buffer` must point to at least `len` doubles.
 */
WristsimStatus wristsim_run_column(const WristsimRun *run,
                                   WristsimColumn column,
                                   double *buffer,
                                   size_t len);

/**
 * Render the run's time series as CSV. Free with `wristsim_string_free`.
 *
 * # Safety
 * `run` and `out` must be valid pointers.
 */
WristsimStatus wristsim_run_csv(const WristsimRun *run, char **out);

/**
 * Render the run's summary report as JSON. Free with
 * `wristsim_string_free`.
 *
 * # Safety
 * `run` and `out` must be valid pointers.
 */
WristsimStatus wristsim_run_summary_json(const WristsimRun *run, char **out);

/**
 * Free a string produced by this library. NULL is ignored.
 *
 * # Safety
 * `s` must have been returned by a wristsim function and not yet freed.
 */
void wristsim_string_free(char *s);

/**
 * Constant-curvature tip position: x = R sin(theta), y = R (1 - cos(theta)).
 *
 * # Safety
 * `out_x` and `out_y` must be valid writable pointers.
 */
WristsimStatus wristsim_tip_position(double radius, double theta, double *out_x, double *out_y);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WRISTSIM_H */
