//! C ABI over the qdiamond engine.
//!
//! Conventions:
//! - Series handles are opaque `QdSeries*` pointers owned by the caller
//!   and released with [`qd_series_free`]. Strings returned through
//!   `char**` are released with [`qd_string_free`].
//! - Every fallible call returns a [`QdStatus`]; on any non-`Ok` status
//!   [`qd_last_error`] holds a message (thread-local, valid until the
//!   next failing call on the same thread).
//! - `modulus = 0` selects exact integer coefficients; `modulus >= 2`
//!   selects Z/M.
//! - Panics never unwind across the boundary; they surface as
//!   `QdStatus::Panic`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qdiamond::{
    eta_quotient_series, partition_series, smoot_check, verify_lemma, CoeffRing, Congruence,
    EtaQuotient, LemmaId, Series, Source,
};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QdStatus {
    Ok = 0,
    NullArgument,
    InvalidArgument,
    ParseError,
    RingMismatch,
    NonUnitConstant,
    IndexOutOfRange,
    NotPrime,
    Panic,
}

/// Opaque truncated power series handle.
pub struct QdSeries {
    inner: Series,
}

/// Outcome of a bounded congruence verification.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct QdReport {
    /// Indices A*n + B below this bound were checked.
    pub bound: u64,
    /// Progression index of the earliest violation (valid if
    /// `has_counterexample` is 1).
    pub counterexample_n: u64,
    /// The argument A*n + B of the earliest violation.
    pub counterexample_index: u64,
    /// d_k(index) mod M at the violation, nonzero.
    pub counterexample_residue: u64,
    /// 1 when the congruence holds everywhere below the bound.
    pub holds: u8,
    pub has_counterexample: u8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let message = CString::new(message).unwrap_or_else(|_| CString::new("error").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn fail(status: QdStatus, message: impl Into<String>) -> QdStatus {
    set_error(message.into());
    status
}

fn status_of(err: &qdiamond::Error) -> QdStatus {
    match err {
        qdiamond::Error::RingMismatch(_, _) => QdStatus::RingMismatch,
        qdiamond::Error::InvalidModulus(_) => QdStatus::InvalidArgument,
        qdiamond::Error::NonUnitConstant { .. } => QdStatus::NonUnitConstant,
        qdiamond::Error::IndexOutOfRange { .. } => QdStatus::IndexOutOfRange,
        qdiamond::Error::NotPrime(_) => QdStatus::NotPrime,
        qdiamond::Error::InvalidArgument(_) => QdStatus::InvalidArgument,
    }
}

fn guarded(f: impl FnOnce() -> QdStatus) -> QdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic in qdiamond".to_string());
            fail(QdStatus::Panic, message)
        }
    }
}

fn ring_for(modulus: u64) -> Result<CoeffRing, qdiamond::Error> {
    if modulus == 0 {
        Ok(CoeffRing::Int)
    } else {
        CoeffRing::modular(modulus)
    }
}

fn order_for(order: u64) -> Result<usize, String> {
    if order == 0 {
        return Err("order must be at least 1".to_string());
    }
    usize::try_from(order).map_err(|_| format!("order {order} does not fit this platform"))
}

unsafe fn parse_cstr<'a>(ptr: *const c_char) -> Option<&'a str> {
    if ptr.is_null() {
        return None;
    }
    CStr::from_ptr(ptr).to_str().ok()
}

fn emit_series(series: Series, out: *mut *mut QdSeries) -> QdStatus {
    let handle = Box::new(QdSeries { inner: series });
    unsafe { *out = Box::into_raw(handle) };
    QdStatus::Ok
}

/// Message for the most recent failure on this thread, or NULL. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qd_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|message| message.as_ptr())
            .unwrap_or(ptr::null())
    })
}

/// Crate version as a static string.
#[no_mangle]
pub extern "C" fn qd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Expand the eta quotient given as whitespace-separated `r^e` tokens
/// (e.g. "2^2 1^-7") to `order` coefficients.
///
/// # Safety
/// `eta` must be NULL or a valid NUL-terminated string; `out` must be
/// NULL or a valid location for one pointer.
#[no_mangle]
pub unsafe extern "C" fn qd_series_eta(
    eta: *const c_char,
    order: u64,
    modulus: u64,
    out: *mut *mut QdSeries,
) -> QdStatus {
    guarded(|| {
        if out.is_null() {
            return fail(QdStatus::NullArgument, "out pointer is NULL");
        }
        let Some(text) = (unsafe { parse_cstr(eta) }) else {
            return fail(QdStatus::NullArgument, "eta string is NULL or not UTF-8");
        };
        let quotient = match EtaQuotient::parse(text) {
            Ok(q) => q,
            Err(e) => return fail(QdStatus::ParseError, e.to_string()),
        };
        let ring = match ring_for(modulus) {
            Ok(r) => r,
            Err(e) => return fail(status_of(&e), e.to_string()),
        };
        let n = match order_for(order) {
            Ok(n) => n,
            Err(e) => return fail(QdStatus::InvalidArgument, e),
        };
        emit_series(eta_quotient_series(&quotient, n, ring), out)
    })
}

/// Expand d_k (the f_2^k / f_1^{3k+1} stream) to `order` coefficients.
///
/// # Safety
/// `out` must be NULL or a valid location for one pointer.
#[no_mangle]
pub unsafe extern "C" fn qd_series_dk(
    k: u64,
    order: u64,
    modulus: u64,
    out: *mut *mut QdSeries,
) -> QdStatus {
    guarded(|| {
        if out.is_null() {
            return fail(QdStatus::NullArgument, "out pointer is NULL");
        }
        if k < 1 {
            return fail(QdStatus::InvalidArgument, "k must be at least 1");
        }
        let ring = match ring_for(modulus) {
            Ok(r) => r,
            Err(e) => return fail(status_of(&e), e.to_string()),
        };
        let n = match order_for(order) {
            Ok(n) => n,
            Err(e) => return fail(QdStatus::InvalidArgument, e),
        };
        emit_series(qdiamond::dk_series(k, n, ring).values, out)
    })
}

/// Expand the partition generating function 1/f_1 to `order` coefficients.
///
/// # Safety
/// `out` must be NULL or a valid location for one pointer.
#[no_mangle]
pub unsafe extern "C" fn qd_series_partition(
    order: u64,
    modulus: u64,
    out: *mut *mut QdSeries,
) -> QdStatus {
    guarded(|| {
        if out.is_null() {
            return fail(QdStatus::NullArgument, "out pointer is NULL");
        }
        let ring = match ring_for(modulus) {
            Ok(r) => r,
            Err(e) => return fail(status_of(&e), e.to_string()),
        };
        let n = match order_for(order) {
            Ok(n) => n,
            Err(e) => return fail(QdStatus::InvalidArgument, e),
        };
        emit_series(partition_series(n, ring), out)
    })
}

/// Number of retained coefficients; 0 for a NULL handle.
///
/// # Safety
/// `series` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn qd_series_order(series: *const QdSeries) -> u64 {
    if series.is_null() {
        return 0;
    }
    unsafe { (*series).inner.order() as u64 }
}

/// Coefficient of q^n as a u64 residue. Only valid for modular series.
///
/// # Safety
/// `series` must be NULL or a live handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn qd_series_coeff_u64(
    series: *const QdSeries,
    n: u64,
    out: *mut u64,
) -> QdStatus {
    guarded(|| {
        if series.is_null() || out.is_null() {
            return fail(QdStatus::NullArgument, "series or out pointer is NULL");
        }
        let series = unsafe { &(*series).inner };
        let Some(coeffs) = series.coeffs_mod() else {
            return fail(
                QdStatus::InvalidArgument,
                "series is exact; use qd_series_coeff_str",
            );
        };
        let Ok(i) = usize::try_from(n) else {
            return fail(QdStatus::IndexOutOfRange, format!("index {n} out of range"));
        };
        match coeffs.get(i) {
            Some(value) => {
                unsafe { *out = *value };
                QdStatus::Ok
            }
            None => fail(
                QdStatus::IndexOutOfRange,
                format!("index {n} out of range for order {}", series.order()),
            ),
        }
    })
}

/// Coefficient of q^n as a decimal string (exact or modular). The caller
/// frees the string with [`qd_string_free`].
///
/// # Safety
/// `series` must be NULL or a live handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn qd_series_coeff_str(
    series: *const QdSeries,
    n: u64,
    out: *mut *mut c_char,
) -> QdStatus {
    guarded(|| {
        if series.is_null() || out.is_null() {
            return fail(QdStatus::NullArgument, "series or out pointer is NULL");
        }
        let series = unsafe { &(*series).inner };
        let Ok(i) = usize::try_from(n) else {
            return fail(QdStatus::IndexOutOfRange, format!("index {n} out of range"));
        };
        match series.coeff(i) {
            Ok(c) => {
                let text = CString::new(c.to_string()).expect("decimal digits only");
                unsafe { *out = text.into_raw() };
                QdStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Release a series handle. NULL is a no-op.
///
/// # Safety
/// `series` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qd_series_free(series: *mut QdSeries) {
    if series.is_null() {
        return;
    }
    unsafe { drop(Box::from_raw(series)) };
}

/// Release a string returned by this library. NULL is a no-op.
///
/// # Safety
/// `s` must be NULL or a string from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qd_string_free(s: *mut c_char) {
    if s.is_null() {
        return;
    }
    unsafe { drop(CString::from_raw(s)) };
}

/// Verify d_k(A*n + B) ≡ 0 (mod M) for all A*n + B < bound and fill in
/// the report.
///
/// # Safety
/// `out` must be NULL or a valid location for one [`QdReport`].
#[no_mangle]
pub unsafe extern "C" fn qd_verify(
    k: u64,
    a: u64,
    b: u64,
    m: u64,
    bound: u64,
    out: *mut QdReport,
) -> QdStatus {
    guarded(|| {
        if out.is_null() {
            return fail(QdStatus::NullArgument, "out pointer is NULL");
        }
        if k < 1 || a < 1 || b >= a || m < 2 {
            return fail(
                QdStatus::InvalidArgument,
                "need k >= 1, A >= 1, 0 <= B < A and M >= 2",
            );
        }
        let Ok(bound) = usize::try_from(bound) else {
            return fail(
                QdStatus::InvalidArgument,
                "bound does not fit this platform",
            );
        };
        let claim = Congruence::new(k, a, b, m, "capi", Source::Generated);
        match qdiamond::verify(&claim, bound) {
            Ok(report) => {
                let ce = report.counterexample;
                unsafe {
                    *out = QdReport {
                        bound: report.bound as u64,
                        counterexample_n: ce.map_or(0, |c| c.n),
                        counterexample_index: ce.map_or(0, |c| c.index),
                        counterexample_residue: ce.map_or(0, |c| c.residue),
                        holds: report.holds() as u8,
                        has_counterexample: ce.is_some() as u8,
                    };
                }
                QdStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Verify one classical identity by its CLI name (e.g. "triangular",
/// "mod11-a"). Writes 1 to `out_pass` when LHS = RHS up to `order`.
///
/// # Safety
/// `name` must be NULL or a valid NUL-terminated string; `out_pass`
/// NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn qd_verify_lemma(
    name: *const c_char,
    order: u64,
    out_pass: *mut u8,
) -> QdStatus {
    guarded(|| {
        if out_pass.is_null() {
            return fail(QdStatus::NullArgument, "out pointer is NULL");
        }
        let Some(text) = (unsafe { parse_cstr(name) }) else {
            return fail(QdStatus::NullArgument, "lemma name is NULL or not UTF-8");
        };
        let id = match LemmaId::from_name(text) {
            Ok(id) => id,
            Err(e) => return fail(QdStatus::ParseError, e.to_string()),
        };
        let n = match order_for(order) {
            Ok(n) => n,
            Err(e) => return fail(QdStatus::InvalidArgument, e),
        };
        let outcome = verify_lemma(id, n);
        unsafe { *out_pass = outcome.report.pass() as u8 };
        QdStatus::Ok
    })
}

/// Check the 3-adic d_2 family for alpha = 1..=alpha_max below `bound`.
/// Writes 1 to `out_all_pass` when every alpha holds.
///
/// # Safety
/// `out_all_pass` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn qd_smoot_check(
    alpha_max: u32,
    bound: u64,
    out_all_pass: *mut u8,
) -> QdStatus {
    guarded(|| {
        if out_all_pass.is_null() {
            return fail(QdStatus::NullArgument, "out pointer is NULL");
        }
        let Ok(bound) = usize::try_from(bound) else {
            return fail(
                QdStatus::InvalidArgument,
                "bound does not fit this platform",
            );
        };
        match smoot_check(alpha_max, bound) {
            Ok(reports) => {
                let all = reports.iter().all(|r| r.report.holds());
                unsafe { *out_all_pass = all as u8 };
                QdStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}
