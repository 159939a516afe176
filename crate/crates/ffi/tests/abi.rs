use std::ffi::{CStr, CString};
use std::ptr;

use wavegen_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(wg_last_error_message()) }.to_string_lossy().into_owned()
}

fn catalog_bank(name: &str) -> *mut WgBank {
    let name = CString::new(name).unwrap();
    let mut bank = ptr::null_mut();
    assert_eq!(unsafe { wg_bank_from_catalog(name.as_ptr(), &mut bank) }, WgStatus::Ok);
    bank
}

fn solved(n: usize, seed: u64) -> (*mut WgSolveResult, *mut WgBank) {
    let mut result = ptr::null_mut();
    let status = unsafe { wg_solve(n, seed, 0.0, 0, ptr::null(), ptr::null(), 0, &mut result) };
    assert_eq!(status, WgStatus::Ok, "{}", last_error());
    let mut bank = ptr::null_mut();
    assert_eq!(unsafe { wg_solve_result_bank(result, &mut bank) }, WgStatus::Ok);
    (result, bank)
}

fn noise(len: usize) -> Vec<f64> {
    (0..len).map(|i| ((i * 7919 % 251) as f64 - 125.0) / 10.0).collect()
}

#[test]
fn bank_filters_follow_operators() {
    let taps = [1.0, 2.0, 3.0, 4.0];
    let mut bank = ptr::null_mut();
    assert_eq!(unsafe { wg_bank_new(taps.as_ptr(), 4, &mut bank) }, WgStatus::Ok);
    assert_eq!(unsafe { wg_bank_len(bank) }, 4);
    let mut out = [0.0; 4];
    let get = |kind, out: &mut [f64; 4]| unsafe { wg_bank_filter(bank, kind, out.as_mut_ptr(), 4) };
    assert_eq!(get(WgFilterKind::HighDecomposition, &mut out), WgStatus::Ok);
    assert_eq!(out, [-4.0, 3.0, -2.0, 1.0]);
    get(WgFilterKind::LowReconstruction, &mut out);
    assert_eq!(out, [4.0, 3.0, 2.0, 1.0]);
    get(WgFilterKind::HighReconstruction, &mut out);
    assert_eq!(out, [1.0, -2.0, 3.0, -4.0]);

    let mut short = [0.0; 3];
    let status = unsafe { wg_bank_filter(bank, WgFilterKind::LowDecomposition, short.as_mut_ptr(), 3) };
    assert_eq!(status, WgStatus::BufferTooSmall);
    assert!(last_error().contains("need 4"));
    unsafe { wg_bank_free(bank) };
}

#[test]
fn invalid_inputs_report_status() {
    let mut bank = ptr::null_mut();
    let odd = [1.0, 2.0, 3.0];
    assert_eq!(unsafe { wg_bank_new(odd.as_ptr(), 3, &mut bank) }, WgStatus::InvalidFilter);
    assert!(bank.is_null());
    let nan = [1.0, f64::NAN];
    assert_eq!(unsafe { wg_bank_new(nan.as_ptr(), 2, &mut bank) }, WgStatus::InvalidFilter);
    assert_eq!(unsafe { wg_bank_new(ptr::null(), 2, &mut bank) }, WgStatus::NullPointer);
    assert_eq!(unsafe { wg_bank_new(odd.as_ptr(), 2, ptr::null_mut()) }, WgStatus::NullPointer);

    let name = CString::new("nope").unwrap();
    assert_eq!(unsafe { wg_bank_from_catalog(name.as_ptr(), &mut bank) }, WgStatus::NotFound);
    assert_eq!(unsafe { wg_bank_len(ptr::null()) }, 0);
    unsafe { wg_bank_free(ptr::null_mut()) };
    unsafe { wg_solve_result_free(ptr::null_mut()) };

    let mut result = ptr::null_mut();
    assert_eq!(
        unsafe { wg_solve(0, 1, 0.0, 0, ptr::null(), ptr::null(), 0, &mut result) },
        WgStatus::InvalidArgument
    );
    let pos = [1usize, 1];
    let val = [0.1, 0.2];
    assert_eq!(
        unsafe { wg_solve(3, 1, 0.0, 0, pos.as_ptr(), val.as_ptr(), 2, &mut result) },
        WgStatus::InvalidArgument
    );
    assert!(last_error().contains("pinned twice"));
}

#[test]
fn status_messages_are_static() {
    let msg = unsafe { CStr::from_ptr(wg_status_message(WgStatus::BufferTooSmall)) };
    assert_eq!(msg.to_str().unwrap(), "output buffer too small");
}

#[test]
fn catalog_residuals() {
    let bank = catalog_bank("table1-n4");
    let mut r = WgResiduals::default();
    let mut orth = [0.0; 3];
    let status = unsafe { wg_bank_residuals(bank, &mut r, orth.as_mut_ptr(), 3) };
    assert_eq!(status, WgStatus::Ok);
    assert!(r.total_abs <= 2e-3);
    let sum: f64 = orth.iter().map(|v| v.abs()).sum::<f64>() + r.parity.abs() + r.norm.abs();
    assert!((sum - r.total_abs).abs() < 1e-15);
    assert!((r.lyapunov - (orth.iter().map(|v| v * v).sum::<f64>() + r.parity * r.parity)).abs() < 1e-18);
    assert_eq!(unsafe { wg_bank_residuals(bank, &mut r, ptr::null_mut(), 0) }, WgStatus::Ok);
    unsafe { wg_bank_free(bank) };
}

#[test]
fn solve_and_trace() {
    let (result, bank) = solved(4, 9);
    let (mut status, mut sweeps, mut total) = (WgSolveStatus::MaxSweeps, 0usize, 1.0);
    unsafe { wg_solve_result_summary(result, &mut status, &mut sweeps, &mut total) };
    assert_eq!(status, WgSolveStatus::Converged);
    assert!(total < 1e-13);
    let len = unsafe { wg_solve_result_trace_len(result) };
    assert_eq!(len, sweeps);
    let mut lyap = vec![0.0; len];
    assert_eq!(
        unsafe { wg_solve_result_trace(result, lyap.as_mut_ptr(), ptr::null_mut(), len) },
        WgStatus::Ok
    );
    assert!(lyap.windows(2).all(|w| w[1] <= w[0]));
    let mut taps = [0.0; 8];
    assert_eq!(unsafe { wg_solve_result_taps(result, taps.as_mut_ptr(), 8) }, WgStatus::Ok);
    assert!((taps.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-13);
    unsafe {
        wg_bank_free(bank);
        wg_solve_result_free(result);
    }
}

#[test]
fn pinned_solve_keeps_pins() {
    let pos = [1usize, 5, 6];
    let val = [0.0352, 0.8069, 0.3327];
    let mut result = ptr::null_mut();
    let status = unsafe { wg_solve(3, 0, 0.0, 500, pos.as_ptr(), val.as_ptr(), 3, &mut result) };
    assert_eq!(status, WgStatus::Ok);
    let mut taps = [0.0; 6];
    unsafe { wg_solve_result_taps(result, taps.as_mut_ptr(), 6) };
    assert_eq!((taps[0], taps[4], taps[5]), (0.0352, 0.8069, 0.3327));
    let mut s = WgSolveStatus::Converged;
    unsafe { wg_solve_result_summary(result, &mut s, ptr::null_mut(), ptr::null_mut()) };
    assert_eq!(s, WgSolveStatus::MaxSweeps);
    unsafe { wg_solve_result_free(result) };
}

#[test]
fn closed_form() {
    let mut out = [0.0; 6];
    assert_eq!(unsafe { wg_closed_form_n3(0.0352, 0.8069, 0.3327, out.as_mut_ptr()) }, WgStatus::Ok);
    assert!((out[1] + 0.0854).abs() < 5e-3);
    assert_eq!(unsafe { wg_closed_form_n3(2.0, 3.0, 1.0, out.as_mut_ptr()) }, WgStatus::ZeroDivisor);
}

#[test]
fn round_trip_1d() {
    let (result, bank) = solved(3, 7);
    let s = noise(32);
    let (mut p, mut q, mut back) = (vec![0.0; 16], vec![0.0; 16], vec![0.0; 32]);
    unsafe {
        assert_eq!(
            wg_analyze_1d(bank, s.as_ptr(), 32, WgMode::Periodic, p.as_mut_ptr(), q.as_mut_ptr()),
            WgStatus::Ok
        );
        assert_eq!(
            wg_synthesize_1d(bank, p.as_ptr(), q.as_ptr(), 32, WgMode::Periodic, back.as_mut_ptr()),
            WgStatus::Ok
        );
    }
    let delta = s.iter().zip(&back).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    assert!(delta < 1e-10);

    let status =
        unsafe { wg_analyze_1d(bank, s.as_ptr(), 10, WgMode::Periodic, p.as_mut_ptr(), q.as_mut_ptr()) };
    assert_eq!(status, WgStatus::InvalidLength);
    unsafe {
        wg_bank_free(bank);
        wg_solve_result_free(result);
    }
}

#[test]
fn round_trip_2d() {
    let (result, bank) = solved(3, 5);
    let (rows, cols) = (16, 24);
    let img = noise(rows * cols);
    let plane = rows * cols / 4;
    let mut planes = vec![vec![0.0; plane]; 4];
    let mut back = vec![0.0; rows * cols];
    unsafe {
        let [m, h, v, d] = &mut planes[..] else { unreachable!() };
        let status = wg_analyze_2d(
            bank, img.as_ptr(), rows, cols, WgMode::Periodic,
            m.as_mut_ptr(), h.as_mut_ptr(), v.as_mut_ptr(), d.as_mut_ptr(),
        );
        assert_eq!(status, WgStatus::Ok, "{}", last_error());
        let status = wg_synthesize_2d(
            bank, m.as_ptr(), h.as_ptr(), v.as_ptr(), d.as_ptr(), rows, cols, WgMode::Periodic,
            back.as_mut_ptr(),
        );
        assert_eq!(status, WgStatus::Ok, "{}", last_error());
        let status = wg_synthesize_2d(
            bank, m.as_ptr(), h.as_ptr(), v.as_ptr(), d.as_ptr(), rows, cols + 1, WgMode::Periodic,
            back.as_mut_ptr(),
        );
        assert_eq!(status, WgStatus::InvalidLength);
    }
    let delta = img.iter().zip(&back).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    assert!(delta < 1e-10);
    unsafe {
        wg_bank_free(bank);
        wg_solve_result_free(result);
    }
}
