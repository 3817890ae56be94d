//! C ABI for paracert.
//!
//! Every function returns a [`PcStatus`]; results go through out-pointers.
//! On failure a message is available from [`pc_last_error_message`] on the
//! same thread. Verdicts are opaque handles released with
//! [`pc_verdict_free`]; strings returned by the library are released with
//! [`pc_string_free`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use paracert::interval::Interval;
use paracert::quad::{self, IntegrationBox};
use paracert::special::{self, Exponents};
use paracert::strichartz::{self, Status, Verdict};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcStatus {
    PcOk = 0,
    PcNullPointer = 1,
    PcInvalidArgument = 2,
    PcUnsupported = 3,
    PcDomainError = 4,
    PcSerializationError = 5,
    PcPanic = 6,
}

/// Outcome of a separation run.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcVerdictStatus {
    PcCertified = 0,
    PcInconclusive = 1,
}

/// A closed interval `[lo, hi]` that encloses an exact real value.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PcInterval {
    pub lo: f64,
    pub hi: f64,
}

impl From<Interval> for PcInterval {
    fn from(v: Interval) -> Self {
        PcInterval { lo: v.lo(), hi: v.hi() }
    }
}

/// Opaque result of [`pc_verify`].
pub struct PcVerdict {
    inner: Verdict,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("no interior NUL"));
}

struct Failure(PcStatus, String);

impl Failure {
    fn invalid(msg: impl Into<String>) -> Self {
        Failure(PcStatus::PcInvalidArgument, msg.into())
    }
}

impl From<strichartz::StrichartzError> for Failure {
    fn from(e: strichartz::StrichartzError) -> Self {
        let code = match e {
            strichartz::StrichartzError::Unsupported(_) => PcStatus::PcUnsupported,
            strichartz::StrichartzError::InvalidGrid(_) => PcStatus::PcInvalidArgument,
            _ => PcStatus::PcDomainError,
        };
        Failure(code, e.to_string())
    }
}

macro_rules! domain_failure {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure(PcStatus::PcDomainError, e.to_string())
            }
        }
    )*};
}

domain_failure!(
    quad::QuadError,
    special::SpecialError,
    paracert::interval::IntervalError
);

/// Runs `f`, storing its message on failure and converting panics.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PcStatus::PcOk,
        Ok(Err(Failure(code, msg))) => {
            set_error(msg);
            code
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            PcStatus::PcPanic
        }
    }
}

/// # Safety
/// `p` must be null or valid for writes of `T`.
unsafe fn write<T>(p: *mut T, v: T) -> Result<(), Failure> {
    if p.is_null() {
        return Err(Failure(PcStatus::PcNullPointer, "null output pointer".into()));
    }
    unsafe { p.write(v) };
    Ok(())
}

/// # Safety
/// `p` must be null or point to a live verdict.
unsafe fn verdict<'a>(p: *const PcVerdict) -> Result<&'a Verdict, Failure> {
    if p.is_null() {
        return Err(Failure(PcStatus::PcNullPointer, "null verdict handle".into()));
    }
    Ok(unsafe { &(*p).inner })
}

fn certified_exponents(dim: u32) -> Result<Exponents, Failure> {
    if !matches!(dim, 1 | 2) {
        return Err(Failure(
            PcStatus::PcUnsupported,
            format!("dimension {dim} is not supported, use 1 or 2"),
        ));
    }
    Ok(Exponents::stein_tomas(dim))
}

fn interval(v: PcInterval) -> Result<Interval, Failure> {
    Interval::new(v.lo, v.hi).map_err(|e| Failure::invalid(e.to_string()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Certifies J(0) ≠ J(π/2) on `[-t_max, t_max] x [0, r_max]` with grid
/// spacing `step`. The verdict is written to `*out` even when inconclusive.
///
/// # Safety
/// `out` must be null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_verify(dim: u32, t_max: f64, r_max: f64, step: f64, out: *mut *mut PcVerdict) -> PcStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure(PcStatus::PcNullPointer, "null output pointer".into()));
        }
        let e = certified_exponents(dim)?;
        let steps = strichartz::grid_steps(t_max, r_max, step)?;
        let b = IntegrationBox::time_radius(t_max, r_max)?;
        let v = strichartz::verify_separation(&e, &b, &steps)?;
        unsafe { write(out, Box::into_raw(Box::new(PcVerdict { inner: v }))) }
    })
}

/// # Safety
/// `v` must be null or a live verdict; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn pc_verdict_status(v: *const PcVerdict, out: *mut PcVerdictStatus) -> PcStatus {
    guard(|| {
        let s = match unsafe { verdict(v) }?.status {
            Status::Certified => PcVerdictStatus::PcCertified,
            Status::Inconclusive => PcVerdictStatus::PcInconclusive,
        };
        unsafe { write(out, s) }
    })
}

/// Enclosure of J(0) over the box.
///
/// # Safety
/// As for [`pc_verdict_status`].
#[no_mangle]
pub unsafe extern "C" fn pc_verdict_j0(v: *const PcVerdict, out: *mut PcInterval) -> PcStatus {
    guard(|| {
        let x = unsafe { verdict(v) }?.enclosure_j0();
        unsafe { write(out, x.into()) }
    })
}

/// Enclosure of J(π/2) over the box.
///
/// # Safety
/// As for [`pc_verdict_status`].
#[no_mangle]
pub unsafe extern "C" fn pc_verdict_jhalfpi(v: *const PcVerdict, out: *mut PcInterval) -> PcStatus {
    guard(|| {
        let x = unsafe { verdict(v) }?.enclosure_j_half_pi();
        unsafe { write(out, x.into()) }
    })
}

/// Certified bound over the complement of the box.
///
/// # Safety
/// As for [`pc_verdict_status`].
#[no_mangle]
pub unsafe extern "C" fn pc_verdict_tail(v: *const PcVerdict, out: *mut f64) -> PcStatus {
    guard(|| {
        let x = unsafe { verdict(v) }?.tail;
        unsafe { write(out, x) }
    })
}

/// Gap between the widened enclosures; positive iff certified.
///
/// # Safety
/// As for [`pc_verdict_status`].
#[no_mangle]
pub unsafe extern "C" fn pc_verdict_margin(v: *const PcVerdict, out: *mut f64) -> PcStatus {
    guard(|| {
        let x = unsafe { verdict(v) }?.margin;
        unsafe { write(out, x) }
    })
}

/// The verdict as JSON. Release the string with [`pc_string_free`].
///
/// # Safety
/// As for [`pc_verdict_status`].
#[no_mangle]
pub unsafe extern "C" fn pc_verdict_to_json(v: *const PcVerdict, out: *mut *mut c_char) -> PcStatus {
    guard(|| {
        let v = unsafe { verdict(v) }?;
        let text = serde_json::to_string(v).map_err(|e| Failure(PcStatus::PcSerializationError, e.to_string()))?;
        let c = CString::new(text).map_err(|e| Failure(PcStatus::PcSerializationError, e.to_string()))?;
        unsafe { write(out, c.into_raw()) }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Releases a verdict. Null is ignored.
///
/// # Safety
/// `v` must be null or a verdict from [`pc_verify`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pc_verdict_free(v: *mut PcVerdict) {
    if !v.is_null() {
        drop(unsafe { Box::from_raw(v) });
    }
}

/// κ_q for the Stein-Tomas exponent in dimension `dim` (1 or 2).
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn pc_kappa(dim: u32, out: *mut PcInterval) -> PcStatus {
    guard(|| {
        let k = special::gamma_ratio_constant(&certified_exponents(dim)?)?;
        unsafe { write(out, k.into()) }
    })
}

/// κ_q^{1/q} · 2^{1/p'} in dimension `dim` (1 or 2).
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn pc_lower_bound_factor(dim: u32, out: *mut PcInterval) -> PcStatus {
    guard(|| {
        let k = special::lower_bound_factor(&certified_exponents(dim)?)?;
        unsafe { write(out, k.into()) }
    })
}

/// Certified tail bound of the J integrand outside `[-t_max, t_max] x [0, r_max]`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn pc_tail_bound(dim: u32, t_max: f64, r_max: f64, out: *mut f64) -> PcStatus {
    guard(|| {
        let t = quad::tail_bound_j(&certified_exponents(dim)?, t_max, r_max)?;
        unsafe { write(out, t) }
    })
}

/// Validates `[lo, hi]`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn pc_interval_new(lo: f64, hi: f64, out: *mut PcInterval) -> PcStatus {
    guard(|| {
        let v = interval(PcInterval { lo, hi })?;
        unsafe { write(out, v.into()) }
    })
}

fn binary(
    a: PcInterval,
    b: PcInterval,
    out: *mut PcInterval,
    f: impl FnOnce(Interval, Interval) -> Result<Interval, Failure>,
) -> PcStatus {
    guard(|| {
        let r = f(interval(a)?, interval(b)?)?;
        unsafe { write(out, r.into()) }
    })
}

fn unary(a: PcInterval, out: *mut PcInterval, f: impl FnOnce(Interval) -> Result<Interval, Failure>) -> PcStatus {
    guard(|| {
        let r = f(interval(a)?)?;
        unsafe { write(out, r.into()) }
    })
}

/// Outward-rounded sum.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn pc_interval_add(a: PcInterval, b: PcInterval, out: *mut PcInterval) -> PcStatus {
    binary(a, b, out, |x, y| Ok(x + y))
}

/// Outward-rounded difference.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn pc_interval_sub(a: PcInterval, b: PcInterval, out: *mut PcInterval) -> PcStatus {
    binary(a, b, out, |x, y| Ok(x - y))
}

/// Outward-rounded product.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn pc_interval_mul(a: PcInterval, b: PcInterval, out: *mut PcInterval) -> PcStatus {
    binary(a, b, out, |x, y| Ok(x * y))
}

/// Outward-rounded quotient; fails if `b` contains 0.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn pc_interval_div(a: PcInterval, b: PcInterval, out: *mut PcInterval) -> PcStatus {
    binary(a, b, out, |x, y| Ok(x.div(y)?))
}

/// Enclosure of exp.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn pc_interval_exp(a: PcInterval, out: *mut PcInterval) -> PcStatus {
    unary(a, out, |x| Ok(x.exp()))
}

/// Enclosure of ln; fails unless `a` is positive.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn pc_interval_ln(a: PcInterval, out: *mut PcInterval) -> PcStatus {
    unary(a, out, |x| Ok(x.ln()?))
}

/// Enclosure of sqrt; fails if `a` has a negative part.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn pc_interval_sqrt(a: PcInterval, out: *mut PcInterval) -> PcStatus {
    unary(a, out, |x| Ok(x.sqrt()?))
}

/// Enclosure of cos.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn pc_interval_cos(a: PcInterval, out: *mut PcInterval) -> PcStatus {
    unary(a, out, |x| Ok(x.cos()))
}

/// Enclosure of sin.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn pc_interval_sin(a: PcInterval, out: *mut PcInterval) -> PcStatus {
    unary(a, out, |x| Ok(x.sin()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;

    #[test]
    fn error_message_is_thread_local() {
        let mut out = PcInterval { lo: 0.0, hi: 0.0 };
        let s = unsafe { pc_interval_new(2.0, 1.0, &mut out) };
        assert_eq!(s, PcStatus::PcInvalidArgument);
        let msg = unsafe { CStr::from_ptr(pc_last_error_message()) }
            .to_str()
            .unwrap()
            .to_string();
        assert!(msg.contains("invalid interval bounds"), "{msg}");
        let other = std::thread::spawn(|| unsafe { CStr::from_ptr(pc_last_error_message()) }.to_bytes().len())
            .join()
            .unwrap();
        assert_eq!(other, 0);
    }

    #[test]
    fn version_string() {
        let v = unsafe { CStr::from_ptr(pc_version()) }.to_str().unwrap();
        assert_eq!(v, env!("CARGO_PKG_VERSION"));
    }
}
