use std::ffi::CStr;
use std::ptr;

use paracert_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(pc_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn null_out_pointers_are_rejected() {
    let a = PcInterval { lo: 1.0, hi: 2.0 };
    unsafe {
        assert_eq!(pc_interval_add(a, a, ptr::null_mut()), PcStatus::PcNullPointer);
        assert_eq!(pc_kappa(1, ptr::null_mut()), PcStatus::PcNullPointer);
        assert_eq!(pc_verify(1, 50.0, 5.0, 0.1, ptr::null_mut()), PcStatus::PcNullPointer);
        let mut s = PcVerdictStatus::PcInconclusive;
        assert_eq!(pc_verdict_status(ptr::null(), &mut s), PcStatus::PcNullPointer);
        pc_verdict_free(ptr::null_mut());
        pc_string_free(ptr::null_mut());
    }
    assert!(!last_error().is_empty());
}

#[test]
fn interval_arithmetic_encloses() {
    let mut out = PcInterval { lo: 0.0, hi: 0.0 };
    let tenth = PcInterval { lo: 0.1, hi: 0.1 };
    unsafe {
        assert_eq!(pc_interval_add(tenth, tenth, &mut out), PcStatus::PcOk);
        assert!(out.lo <= 0.2 && 0.2 <= out.hi);
        assert_eq!(
            pc_interval_exp(PcInterval { lo: 1.0, hi: 1.0 }, &mut out),
            PcStatus::PcOk
        );
        assert!(out.lo <= std::f64::consts::E && std::f64::consts::E <= out.hi);
        assert_eq!(
            pc_interval_div(tenth, PcInterval { lo: -1.0, hi: 1.0 }, &mut out),
            PcStatus::PcDomainError
        );
        assert_eq!(
            pc_interval_ln(PcInterval { lo: -1.0, hi: 1.0 }, &mut out),
            PcStatus::PcDomainError
        );
        assert_eq!(pc_interval_new(f64::NAN, 1.0, &mut out), PcStatus::PcInvalidArgument);
    }
}

#[test]
fn constants() {
    let mut k = PcInterval { lo: 0.0, hi: 0.0 };
    unsafe {
        assert_eq!(pc_kappa(1, &mut k), PcStatus::PcOk);
        let expected = 0.3125;
        assert!(k.lo <= expected && expected <= k.hi);
        assert_eq!(pc_kappa(3, &mut k), PcStatus::PcUnsupported);
        let mut t = 0.0;
        assert_eq!(pc_tail_bound(1, 50.0, 5.0, &mut t), PcStatus::PcOk);
        assert!(t > 0.0 && t < 1e-5);
    }
}

#[test]
fn verify_round_trip() {
    let mut v: *mut PcVerdict = ptr::null_mut();
    unsafe {
        assert_eq!(pc_verify(1, 50.0, 5.0, 0.1, &mut v), PcStatus::PcOk);
        assert!(!v.is_null());
        let mut status = PcVerdictStatus::PcInconclusive;
        assert_eq!(pc_verdict_status(v, &mut status), PcStatus::PcOk);
        assert_eq!(status, PcVerdictStatus::PcCertified);
        let (mut j0, mut j1) = (PcInterval { lo: 0.0, hi: 0.0 }, PcInterval { lo: 0.0, hi: 0.0 });
        assert_eq!(pc_verdict_j0(v, &mut j0), PcStatus::PcOk);
        assert_eq!(pc_verdict_jhalfpi(v, &mut j1), PcStatus::PcOk);
        assert!(j1.hi < j0.lo);
        let mut margin = 0.0;
        assert_eq!(pc_verdict_margin(v, &mut margin), PcStatus::PcOk);
        assert!(margin > 0.0);
        let mut json = ptr::null_mut();
        assert_eq!(pc_verdict_to_json(v, &mut json), PcStatus::PcOk);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        pc_string_free(json);
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed["status"], "certified");
        pc_verdict_free(v);
    }
}

#[test]
fn bad_grid_reports_invalid_argument() {
    let mut v: *mut PcVerdict = ptr::null_mut();
    let s = unsafe { pc_verify(1, 50.0, 5.0, -1.0, &mut v) };
    assert_ne!(s, PcStatus::PcOk);
    assert!(v.is_null());
    assert!(!last_error().is_empty());
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/paracert.h")).unwrap();
    for name in [
        "PARACERT_H",
        "typedef struct PcVerdict PcVerdict;",
        "PC_NULL_POINTER = 1",
        "pc_verify(",
        "pc_verdict_free(",
        "pc_string_free(",
        "pc_last_error_message(",
        "pc_interval_sqrt(",
    ] {
        assert!(header.contains(name), "header is missing {name}");
    }
}
