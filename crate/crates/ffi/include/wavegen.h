#ifndef WAVEGEN_H
#define WAVEGEN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WgStatus {
  WG_STATUS_OK = 0,
  WG_STATUS_NULL_POINTER = 1,
  WG_STATUS_INVALID_ARGUMENT = 2,
  WG_STATUS_INVALID_FILTER = 3,
  WG_STATUS_INVALID_LENGTH = 4,
  WG_STATUS_ZERO_DIVISOR = 5,
  WG_STATUS_BUFFER_TOO_SMALL = 6,
  WG_STATUS_NOT_FOUND = 7,
  WG_STATUS_PANIC = 8,
} WgStatus;

// Selects one filter of a bank.
typedef enum WgFilterKind {
  WG_FILTER_KIND_LOW_DECOMPOSITION = 0,
  WG_FILTER_KIND_HIGH_DECOMPOSITION = 1,
  WG_FILTER_KIND_LOW_RECONSTRUCTION = 2,
  WG_FILTER_KIND_HIGH_RECONSTRUCTION = 3,
} WgFilterKind;

typedef enum WgSolveStatus {
  WG_SOLVE_STATUS_CONVERGED = 0,
  WG_SOLVE_STATUS_MAX_SWEEPS = 1,
} WgSolveStatus;

typedef enum WgMode {
  WG_MODE_PERIODIC = 0,
  WG_MODE_PAPER_EXTENSION = 1,
} WgMode;

// Opaque filter bank.
typedef struct WgBank WgBank;

// Opaque solver output.
typedef struct WgSolveResult WgSolveResult;

// Scalar residuals of a bank's decomposition low-pass filter.
typedef struct WgResiduals {
  double parity;
  double norm;
  double total_abs;
  double lyapunov;
} WgResiduals;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Human-readable description of a status code. The string is static.
const char *wg_status_message(enum WgStatus status);

// Message for the most recent failing call on this thread, or "" after a
// success. Valid until the next call into this library on the same thread.
const char *wg_last_error_message(void);

// Builds a bank from `len` decomposition low-pass taps (`len` even, ≥ 2).
//
// # Safety
// `taps` must point to `len` readable doubles; `out` must be writable.
enum WgStatus wg_bank_new(const double *taps, size_t len, struct WgBank **out);

// Builds a bank from a named reference filter.
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be writable.
enum WgStatus wg_bank_from_catalog(const char *name, struct WgBank **out);

// # Safety
// `bank` must be null or a handle from this library not yet freed.
void wg_bank_free(struct WgBank *bank);

// Number of taps per filter (2n); 0 for a null handle.
//
// # Safety
// `bank` must be null or a live handle.
size_t wg_bank_len(const struct WgBank *bank);

// Copies one filter of the bank into `out` (capacity `cap` ≥ 2n).
//
// # Safety
// `bank` must be a live handle; `out` must point to `cap` writable doubles.
enum WgStatus wg_bank_filter(const struct WgBank *bank,
                             enum WgFilterKind kind,
                             double *out,
                             size_t cap);

// Scalar residuals and Lyapunov value of the bank's low-pass filter. When
// `orthogonality` is non-null, the n−1 shift residuals (shift 1 first) are
// written there; `cap` must then be ≥ n−1.
//
// # Safety
// `bank` must be a live handle, `out` writable, `orthogonality` null or
// pointing to `cap` writable doubles.
enum WgStatus wg_bank_residuals(const struct WgBank *bank,
                                struct WgResiduals *out,
                                double *orthogonality,
                                size_t cap);

// Runs the coordinate solver for a 2n-tap filter.
//
// `epsilon <= 0` and `max_sweeps == 0` select the defaults. `pin_positions`
// (1-based) and `pin_values` hold `pin_count` taps to keep fixed.
//
// # Safety
// Pin arrays must hold `pin_count` elements; `out` must be writable.
enum WgStatus wg_solve(size_t n,
                       uint64_t seed,
                       double epsilon,
                       size_t max_sweeps,
                       const size_t *pin_positions,
                       const double *pin_values,
                       size_t pin_count,
                       struct WgSolveResult **out);

// # Safety
// `result` must be null or a live handle.
void wg_solve_result_free(struct WgSolveResult *result);

// Stop reason, sweeps used and final total residual.
//
// # Safety
// `result` must be a live handle; the out pointers may be null.
enum WgStatus wg_solve_result_summary(const struct WgSolveResult *result,
                                      enum WgSolveStatus *status,
                                      size_t *sweeps,
                                      double *total_abs);

// Copies the solved taps (2n values) into `out`.
//
// # Safety
// `result` must be a live handle; `out` must point to `cap` doubles.
enum WgStatus wg_solve_result_taps(const struct WgSolveResult *result, double *out, size_t cap);

// Number of trace records; 0 for a null handle.
//
// # Safety
// `result` must be null or a live handle.
size_t wg_solve_result_trace_len(const struct WgSolveResult *result);

// Copies per-sweep Lyapunov values and total residuals; either output may be
// null. Each non-null buffer needs `trace_len` capacity.
//
// # Safety
// `result` must be a live handle; non-null buffers must hold `cap` doubles.
enum WgStatus wg_solve_result_trace(const struct WgSolveResult *result,
                                    double *lyapunov,
                                    double *total_abs,
                                    size_t cap);

// Derives a bank from the solved filter.
//
// # Safety
// `result` must be a live handle; `out` must be writable.
enum WgStatus wg_solve_result_bank(const struct WgSolveResult *result, struct WgBank **out);

// Completes a 6-tap filter from l1, l5, l6; writes 6 taps to `out`.
//
// # Safety
// `out` must point to 6 writable doubles.
enum WgStatus wg_closed_form_n3(double l1, double l5, double l6, double *out);

// One-level analysis of `m` samples into `p` and `q` (m/2 each).
//
// # Safety
// `signal` must hold `m` doubles; `p` and `q` must each hold `m/2`.
enum WgStatus wg_analyze_1d(const struct WgBank *bank,
                            const double *signal,
                            size_t m,
                            enum WgMode boundary,
                            double *p,
                            double *q);

// Inverse of [`wg_analyze_1d`]: writes `m` samples to `out`. Use the
// boundary mode the coefficients were produced with; in paper-extension
// mode the last samples are approximate.
//
// # Safety
// `p` and `q` must hold `m/2` doubles; `out` must hold `m`.
enum WgStatus wg_synthesize_1d(const struct WgBank *bank,
                               const double *p,
                               const double *q,
                               size_t m,
                               enum WgMode boundary,
                               double *out);

// Single-level 2D analysis of a row-major `rows x cols` image. Each plane
// output must hold `(rows/2) * (cols/2)` doubles, row-major.
//
// # Safety
// `pixels` must hold `rows * cols` doubles; plane buffers as above.
enum WgStatus wg_analyze_2d(const struct WgBank *bank,
                            const double *pixels,
                            size_t rows,
                            size_t cols,
                            enum WgMode boundary,
                            double *main,
                            double *horizontal,
                            double *vertical,
                            double *diagonal);

// Inverse of [`wg_analyze_2d`]; writes `rows * cols` pixels to `out`.
//
// # Safety
// Each plane must hold `(rows/2) * (cols/2)` doubles; `out` `rows * cols`.
enum WgStatus wg_synthesize_2d(const struct WgBank *bank,
                               const double *main,
                               const double *horizontal,
                               const double *vertical,
                               const double *diagonal,
                               size_t rows,
                               size_t cols,
                               enum WgMode boundary,
                               double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WAVEGEN_H */
