//! C ABI over `wavegen`.
//!
//! Every function returns a [`WgStatus`]; on failure a description is
//! available from [`wg_last_error_message`] on the same thread. Handles are
//! opaque and owned by the caller once returned; release them with the
//! matching `*_free` function. Output buffers are caller-allocated and sized
//! as documented per function.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use wavegen::filterbank::{constraint_residuals, derive_bank, lookup, Filter, FilterBank};
use wavegen::solver::{closed_form_n3, solve, SolveResult, SolverConfig, Status};
use wavegen::transform::{
    analyze_1d, analyze_2d, synthesize_1d, synthesize_2d, Decomposition1D, Decomposition2D,
    Image2D, Signal1D,
};
use wavegen::{BoundaryMode, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidFilter = 3,
    InvalidLength = 4,
    ZeroDivisor = 5,
    BufferTooSmall = 6,
    NotFound = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WgMode {
    Periodic = 0,
    PaperExtension = 1,
}

/// Selects one filter of a bank.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WgFilterKind {
    LowDecomposition = 0,
    HighDecomposition = 1,
    LowReconstruction = 2,
    HighReconstruction = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WgSolveStatus {
    Converged = 0,
    MaxSweeps = 1,
}

/// Scalar residuals of a bank's decomposition low-pass filter.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct WgResiduals {
    pub parity: f64,
    pub norm: f64,
    pub total_abs: f64,
    pub lyapunov: f64,
}

/// Opaque filter bank.
pub struct WgBank {
    bank: FilterBank,
}

/// Opaque solver output.
pub struct WgSolveResult {
    result: SolveResult,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(WgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::FilterLength(_) | Error::NonFinite { .. } | Error::ZeroVector => {
                WgStatus::InvalidFilter
            }
            Error::SignalLength { .. }
            | Error::TooShortToExtend { .. }
            | Error::ImageDims { .. }
            | Error::ShapeMismatch(_) => WgStatus::InvalidLength,
            Error::ZeroDivisor(_) => WgStatus::ZeroDivisor,
            _ => WgStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn fail<T>(status: WgStatus, msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure(status, msg.into()))
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> WgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            WgStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            WgStatus::Panic
        }
    }
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return fail(WgStatus::NullPointer, format!("{what} is null"));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn slice_mut<'a, T>(p: *mut T, len: usize, what: &str) -> Result<&'a mut [T], Failure> {
    if len == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return fail(WgStatus::NullPointer, format!("{what} is null"));
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(WgStatus::NullPointer, format!("{what} is null")))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return fail(WgStatus::NullPointer, "output handle pointer is null");
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn copy_out(src: &[f64], dst: *mut f64, cap: usize) -> Result<(), Failure> {
    if cap < src.len() {
        return fail(
            WgStatus::BufferTooSmall,
            format!("buffer holds {cap} values, need {}", src.len()),
        );
    }
    let dst = unsafe { slice_mut(dst, src.len(), "output buffer")? };
    dst.copy_from_slice(src);
    Ok(())
}

fn mode(m: WgMode) -> BoundaryMode {
    match m {
        WgMode::Periodic => BoundaryMode::Periodic,
        WgMode::PaperExtension => BoundaryMode::PaperExtension,
    }
}

/// Human-readable description of a status code. The string is static.
#[no_mangle]
pub extern "C" fn wg_status_message(status: WgStatus) -> *const c_char {
    let s: &'static CStr = match status {
        WgStatus::Ok => c"ok",
        WgStatus::NullPointer => c"null pointer argument",
        WgStatus::InvalidArgument => c"invalid argument",
        WgStatus::InvalidFilter => c"invalid filter",
        WgStatus::InvalidLength => c"invalid signal or image dimensions",
        WgStatus::ZeroDivisor => c"vanishing divisor",
        WgStatus::BufferTooSmall => c"output buffer too small",
        WgStatus::NotFound => c"not found",
        WgStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Message for the most recent failing call on this thread, or "" after a
/// success. Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn wg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a bank from `len` decomposition low-pass taps (`len` even, ≥ 2).
///
/// # Safety
/// `taps` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wg_bank_new(taps: *const f64, len: usize, out: *mut *mut WgBank) -> WgStatus {
    guard(|| {
        let taps = slice(taps, len, "taps")?;
        let filter = Filter::new(taps.to_vec())?;
        store(out, WgBank { bank: derive_bank(&filter) })
    })
}

/// Builds a bank from a named reference filter.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wg_bank_from_catalog(name: *const c_char, out: *mut *mut WgBank) -> WgStatus {
    guard(|| {
        if name.is_null() {
            return fail(WgStatus::NullPointer, "name is null");
        }
        let name = CStr::from_ptr(name)
            .to_str()
            .map_err(|_| Failure(WgStatus::InvalidArgument, "name is not UTF-8".into()))?;
        match lookup(name) {
            Some(e) => store(out, WgBank { bank: derive_bank(&e.taps) }),
            None => fail(WgStatus::NotFound, format!("no reference filter named {name:?}")),
        }
    })
}

/// # Safety
/// `bank` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wg_bank_free(bank: *mut WgBank) {
    if !bank.is_null() {
        drop(Box::from_raw(bank));
    }
}

/// Number of taps per filter (2n); 0 for a null handle.
///
/// # Safety
/// `bank` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wg_bank_len(bank: *const WgBank) -> usize {
    bank.as_ref().map_or(0, |b| b.bank.len())
}

/// Copies one filter of the bank into `out` (capacity `cap` ≥ 2n).
///
/// # Safety
/// `bank` must be a live handle; `out` must point to `cap` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn wg_bank_filter(
    bank: *const WgBank,
    kind: WgFilterKind,
    out: *mut f64,
    cap: usize,
) -> WgStatus {
    guard(|| {
        let b = &handle(bank, "bank")?.bank;
        let f = match kind {
            WgFilterKind::LowDecomposition => &b.l_d,
            WgFilterKind::HighDecomposition => &b.h_d,
            WgFilterKind::LowReconstruction => &b.l_r,
            WgFilterKind::HighReconstruction => &b.h_r,
        };
        copy_out(f.taps(), out, cap)
    })
}

/// Scalar residuals and Lyapunov value of the bank's low-pass filter. When
/// `orthogonality` is non-null, the n−1 shift residuals (shift 1 first) are
/// written there; `cap` must then be ≥ n−1.
///
/// # Safety
/// `bank` must be a live handle, `out` writable, `orthogonality` null or
/// pointing to `cap` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn wg_bank_residuals(
    bank: *const WgBank,
    out: *mut WgResiduals,
    orthogonality: *mut f64,
    cap: usize,
) -> WgStatus {
    guard(|| {
        let b = &handle(bank, "bank")?.bank;
        if out.is_null() {
            return fail(WgStatus::NullPointer, "out is null");
        }
        let r = constraint_residuals(&b.l_d);
        if !orthogonality.is_null() {
            copy_out(&r.orthogonality, orthogonality, cap)?;
        }
        *out = WgResiduals {
            parity: r.parity,
            norm: r.norm,
            total_abs: r.total_abs,
            lyapunov: r.lyapunov(),
        };
        Ok(())
    })
}

/// Runs the coordinate solver for a 2n-tap filter.
///
/// `epsilon <= 0` and `max_sweeps == 0` select the defaults. `pin_positions`
/// (1-based) and `pin_values` hold `pin_count` taps to keep fixed.
///
/// # Safety
/// Pin arrays must hold `pin_count` elements; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wg_solve(
    n: usize,
    seed: u64,
    epsilon: f64,
    max_sweeps: usize,
    pin_positions: *const usize,
    pin_values: *const f64,
    pin_count: usize,
    out: *mut *mut WgSolveResult,
) -> WgStatus {
    guard(|| {
        let mut config = SolverConfig::new(n).with_seed(seed);
        if epsilon > 0.0 {
            config = config.with_epsilon(epsilon);
        } else if epsilon.is_nan() {
            return fail(WgStatus::InvalidArgument, "epsilon is NaN");
        }
        if max_sweeps > 0 {
            config = config.with_max_sweeps(max_sweeps);
        }
        let positions = slice(pin_positions, pin_count, "pin_positions")?;
        let values = slice(pin_values, pin_count, "pin_values")?;
        let mut seen = BTreeMap::new();
        for (&p, &v) in positions.iter().zip(values) {
            if seen.insert(p, v).is_some() {
                return fail(WgStatus::InvalidArgument, format!("position {p} pinned twice"));
            }
            config = config.with_pin(p, v);
        }
        let result = solve(&config)?;
        store(out, WgSolveResult { result })
    })
}

/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wg_solve_result_free(result: *mut WgSolveResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Stop reason, sweeps used and final total residual.
///
/// # Safety
/// `result` must be a live handle; the out pointers may be null.
#[no_mangle]
pub unsafe extern "C" fn wg_solve_result_summary(
    result: *const WgSolveResult,
    status: *mut WgSolveStatus,
    sweeps: *mut usize,
    total_abs: *mut f64,
) -> WgStatus {
    guard(|| {
        let r = &handle(result, "result")?.result;
        if !status.is_null() {
            *status = match r.trace.status {
                Status::Converged => WgSolveStatus::Converged,
                Status::MaxSweeps => WgSolveStatus::MaxSweeps,
            };
        }
        if !sweeps.is_null() {
            *sweeps = r.trace.sweeps_used;
        }
        if !total_abs.is_null() {
            *total_abs = r.report.total_abs;
        }
        Ok(())
    })
}

/// Copies the solved taps (2n values) into `out`.
///
/// # Safety
/// `result` must be a live handle; `out` must point to `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn wg_solve_result_taps(
    result: *const WgSolveResult,
    out: *mut f64,
    cap: usize,
) -> WgStatus {
    guard(|| copy_out(handle(result, "result")?.result.filter.taps(), out, cap))
}

/// Number of trace records; 0 for a null handle.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wg_solve_result_trace_len(result: *const WgSolveResult) -> usize {
    result.as_ref().map_or(0, |r| r.result.trace.records.len())
}

/// Copies per-sweep Lyapunov values and total residuals; either output may be
/// null. Each non-null buffer needs `trace_len` capacity.
///
/// # Safety
/// `result` must be a live handle; non-null buffers must hold `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn wg_solve_result_trace(
    result: *const WgSolveResult,
    lyapunov: *mut f64,
    total_abs: *mut f64,
    cap: usize,
) -> WgStatus {
    guard(|| {
        let records = &handle(result, "result")?.result.trace.records;
        if !lyapunov.is_null() {
            let v: Vec<f64> = records.iter().map(|r| r.lyapunov).collect();
            copy_out(&v, lyapunov, cap)?;
        }
        if !total_abs.is_null() {
            let v: Vec<f64> = records.iter().map(|r| r.total_abs).collect();
            copy_out(&v, total_abs, cap)?;
        }
        Ok(())
    })
}

/// Derives a bank from the solved filter.
///
/// # Safety
/// `result` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wg_solve_result_bank(result: *const WgSolveResult, out: *mut *mut WgBank) -> WgStatus {
    guard(|| {
        let r = &handle(result, "result")?.result;
        store(out, WgBank { bank: derive_bank(&r.filter) })
    })
}

/// Completes a 6-tap filter from l1, l5, l6; writes 6 taps to `out`.
///
/// # Safety
/// `out` must point to 6 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn wg_closed_form_n3(l1: f64, l5: f64, l6: f64, out: *mut f64) -> WgStatus {
    guard(|| copy_out(closed_form_n3(l1, l5, l6)?.taps(), out, 6))
}

/// One-level analysis of `m` samples into `p` and `q` (m/2 each).
///
/// # Safety
/// `signal` must hold `m` doubles; `p` and `q` must each hold `m/2`.
#[no_mangle]
pub unsafe extern "C" fn wg_analyze_1d(
    bank: *const WgBank,
    signal: *const f64,
    m: usize,
    boundary: WgMode,
    p: *mut f64,
    q: *mut f64,
) -> WgStatus {
    guard(|| {
        let b = &handle(bank, "bank")?.bank;
        let s = Signal1D::new(slice(signal, m, "signal")?.to_vec())?;
        let d = analyze_1d(&s, b, mode(boundary))?;
        copy_out(&d.p, p, d.p.len())?;
        copy_out(&d.q, q, d.q.len())
    })
}

/// Inverse of [`wg_analyze_1d`]: writes `m` samples to `out`. Use the
/// boundary mode the coefficients were produced with; in paper-extension
/// mode the last samples are approximate.
///
/// # Safety
/// `p` and `q` must hold `m/2` doubles; `out` must hold `m`.
#[no_mangle]
pub unsafe extern "C" fn wg_synthesize_1d(
    bank: *const WgBank,
    p: *const f64,
    q: *const f64,
    m: usize,
    boundary: WgMode,
    out: *mut f64,
) -> WgStatus {
    guard(|| {
        let b = &handle(bank, "bank")?.bank;
        if !m.is_multiple_of(2) {
            return fail(WgStatus::InvalidLength, format!("signal length {m} is odd"));
        }
        let d = Decomposition1D {
            p: slice(p, m / 2, "p")?.to_vec(),
            q: slice(q, m / 2, "q")?.to_vec(),
            mode: mode(boundary),
            m,
            n: b.n(),
        };
        let r = synthesize_1d(&d, b)?;
        copy_out(r.signal.samples(), out, m)
    })
}

/// Single-level 2D analysis of a row-major `rows x cols` image. Each plane
/// output must hold `(rows/2) * (cols/2)` doubles, row-major.
///
/// # Safety
/// `pixels` must hold `rows * cols` doubles; plane buffers as above.
#[no_mangle]
pub unsafe extern "C" fn wg_analyze_2d(
    bank: *const WgBank,
    pixels: *const f64,
    rows: usize,
    cols: usize,
    boundary: WgMode,
    main: *mut f64,
    horizontal: *mut f64,
    vertical: *mut f64,
    diagonal: *mut f64,
) -> WgStatus {
    guard(|| {
        let b = &handle(bank, "bank")?.bank;
        let len = rows
            .checked_mul(cols)
            .ok_or_else(|| Failure(WgStatus::InvalidLength, "image too large".into()))?;
        let img = Image2D::new(rows, cols, slice(pixels, len, "pixels")?.to_vec())?;
        let d = analyze_2d(&img, b, mode(boundary))?;
        for (plane, dst) in d.planes().into_iter().zip([main, horizontal, vertical, diagonal]) {
            copy_out(plane, dst, plane.len())?;
        }
        Ok(())
    })
}

/// Inverse of [`wg_analyze_2d`]; writes `rows * cols` pixels to `out`.
///
/// # Safety
/// Each plane must hold `(rows/2) * (cols/2)` doubles; `out` `rows * cols`.
#[no_mangle]
pub unsafe extern "C" fn wg_synthesize_2d(
    bank: *const WgBank,
    main: *const f64,
    horizontal: *const f64,
    vertical: *const f64,
    diagonal: *const f64,
    rows: usize,
    cols: usize,
    boundary: WgMode,
    out: *mut f64,
) -> WgStatus {
    guard(|| {
        let b = &handle(bank, "bank")?.bank;
        if !rows.is_multiple_of(2) || !cols.is_multiple_of(2) {
            return fail(WgStatus::InvalidLength, format!("image {rows}x{cols} has an odd dimension"));
        }
        let plane = (rows / 2)
            .checked_mul(cols / 2)
            .ok_or_else(|| Failure(WgStatus::InvalidLength, "image too large".into()))?;
        let d = Decomposition2D {
            main: slice(main, plane, "main")?.to_vec(),
            horizontal: slice(horizontal, plane, "horizontal")?.to_vec(),
            vertical: slice(vertical, plane, "vertical")?.to_vec(),
            diagonal: slice(diagonal, plane, "diagonal")?.to_vec(),
            mode: mode(boundary),
            rows,
            cols,
            n: b.n(),
        };
        let img = synthesize_2d(&d, b)?;
        copy_out(img.pixels(), out, rows * cols)
    })
}
