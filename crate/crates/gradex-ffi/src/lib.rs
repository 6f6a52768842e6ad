//! C ABI for the gradex symbolic engine.
//!
//! All functions are fallible and report a [`GradexStatus`]. On failure a
//! human-readable message is stored in thread-local state and can be fetched
//! with [`gradex_last_error_message`]. Handles and strings returned through
//! out-parameters are owned by the caller and must be released with
//! [`gradex_spec_free`] / [`gradex_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gradex::algebra::{format_element, multiply};
use gradex::realization::consistency_check;
use gradex::specfile::{parse_element, SpecDocument};
use gradex::{AlgebraSpec, Verdict};

/// Result codes returned by every gradex entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradexStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The input could not be parsed (spec JSON or element grammar).
    Parse = 3,
    /// The spec parsed but violates a structural invariant.
    InvalidSpec = 4,
    /// An internal error occurred; see the last error message.
    Internal = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

/// Opaque handle to a fully validated algebra configuration.
pub struct GradexSpec {
    inner: AlgebraSpec,
    flux_n: Option<usize>,
}

fn status_from_parse(e: gradex::Error) -> GradexStatus {
    set_error(e.to_string());
    match e {
        gradex::Error::Parse(_) => GradexStatus::Parse,
        _ => GradexStatus::InvalidSpec,
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, GradexStatus> {
    if p.is_null() {
        set_error("null string argument".to_string());
        return Err(GradexStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8".to_string());
        GradexStatus::InvalidUtf8
    })
}

fn give_string(s: String, out: *mut *mut c_char) -> GradexStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            GradexStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL byte".to_string());
            GradexStatus::Internal
        }
    }
}

fn guarded<F: FnOnce() -> GradexStatus>(f: F) -> GradexStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic".to_string());
            GradexStatus::Internal
        }
    }
}

/// Returns the message for the most recent failure on this thread, or null
/// if the last call succeeded. The pointer is valid until the next gradex
/// call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn gradex_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|c| c.as_ptr())
            .unwrap_or(ptr::null())
    })
}

/// Parses a JSON spec document and builds a validated configuration.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gradex_spec_parse_json(
    json: *const c_char,
    out: *mut *mut GradexSpec,
) -> GradexStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null out pointer".to_string());
            return GradexStatus::NullPointer;
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let doc = match SpecDocument::from_json(text) {
            Ok(d) => d,
            Err(e) => return status_from_parse(e),
        };
        let flux_n = doc.is_flux_preset();
        match doc.to_algebra_spec() {
            Ok(spec) => {
                clear_error();
                *out = Box::into_raw(Box::new(GradexSpec { inner: spec, flux_n }));
                GradexStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                GradexStatus::InvalidSpec
            }
        }
    })
}

/// Builds the standard flux configuration on `n` slots.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gradex_spec_flux(n: u32, out: *mut *mut GradexSpec) -> GradexStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null out pointer".to_string());
            return GradexStatus::NullPointer;
        }
        match SpecDocument::flux_preset(n as usize).to_algebra_spec() {
            Ok(spec) => {
                clear_error();
                *out = Box::into_raw(Box::new(GradexSpec {
                    inner: spec,
                    flux_n: Some(n as usize),
                }));
                GradexStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                GradexStatus::InvalidSpec
            }
        }
    })
}

/// Releases a configuration handle. Null is ignored.
///
/// # Safety
/// `spec` must be null or a pointer previously returned by this library.
#[no_mangle]
pub unsafe extern "C" fn gradex_spec_free(spec: *mut GradexSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Releases a string previously returned through an out-parameter.
///
/// # Safety
/// `s` must be null or a pointer previously returned by this library.
#[no_mangle]
pub unsafe extern "C" fn gradex_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of generator slots (the rank of the grading group).
///
/// # Safety
/// `spec` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gradex_spec_rank(spec: *const GradexSpec) -> u32 {
    if spec.is_null() {
        return 0;
    }
    (*spec).inner.rank() as u32
}

/// Rewrites `word` to its normal form and returns the rendered element.
///
/// # Safety
/// `spec` must be a live handle, `word` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn gradex_normal_form(
    spec: *const GradexSpec,
    word: *const c_char,
    out: *mut *mut c_char,
) -> GradexStatus {
    guarded(|| {
        if spec.is_null() || out.is_null() {
            set_error("null argument".to_string());
            return GradexStatus::NullPointer;
        }
        let text = match read_str(word) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let a = &(*spec).inner;
        match parse_element(text, a) {
            Ok(e) => {
                clear_error();
                give_string(format_element(a, &e), out)
            }
            Err(e) => status_from_parse(e),
        }
    })
}

/// Multiplies two elements and returns the product in normal form.
///
/// # Safety
/// `spec` must be a live handle, both inputs NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn gradex_mul(
    spec: *const GradexSpec,
    lhs: *const c_char,
    rhs: *const c_char,
    out: *mut *mut c_char,
) -> GradexStatus {
    guarded(|| {
        if spec.is_null() || out.is_null() {
            set_error("null argument".to_string());
            return GradexStatus::NullPointer;
        }
        let a = &(*spec).inner;
        let l = match read_str(lhs).and_then(|t| parse_element(t, a).map_err(status_from_parse)) {
            Ok(e) => e,
            Err(s) => return s,
        };
        let r = match read_str(rhs).and_then(|t| parse_element(t, a).map_err(status_from_parse)) {
            Ok(e) => e,
            Err(s) => return s,
        };
        match multiply(a, &l, &r) {
            Ok(p) => {
                clear_error();
                give_string(format_element(a, &p), out)
            }
            Err(e) => {
                set_error(e.to_string());
                GradexStatus::Internal
            }
        }
    })
}

/// Runs the realization consistency check and returns a JSON report with
/// the verdict, any excluded generator pairs, and the injectivity flag.
///
/// # Safety
/// `spec` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gradex_classify_json(
    spec: *const GradexSpec,
    out: *mut *mut c_char,
) -> GradexStatus {
    guarded(|| {
        if spec.is_null() || out.is_null() {
            set_error("null argument".to_string());
            return GradexStatus::NullPointer;
        }
        let a = &(*spec).inner;
        match consistency_check(a) {
            Ok(report) => {
                let pairs: Vec<serde_json::Value> = report
                    .pauli_pairs
                    .iter()
                    .map(|(p, q)| {
                        serde_json::json!({
                            "left": { "slot": p.slot, "base": p.base },
                            "right": { "slot": q.slot, "base": q.base },
                        })
                    })
                    .collect();
                let verdict = match report.verdict {
                    Verdict::Reality => "reality",
                    Verdict::Degenerate => "degenerate",
                };
                let label = (*spec).flux_n.map(|n| {
                    if n % 2 == 0 { "composite_fermion" } else { "composite_boson" }
                });
                let doc = serde_json::json!({
                    "verdict": verdict,
                    "pauli_pairs": pairs,
                    "flux_label": label,
                    "injective": report.injective,
                });
                clear_error();
                give_string(doc.to_string(), out)
            }
            Err(e) => {
                set_error(e.to_string());
                GradexStatus::Internal
            }
        }
    })
}
