//! C ABI for the core checkers: opaque handles over set functions and
//! set families, status codes, and a per-thread last-error message.
//!
//! Every function is panic-safe: panics are caught at the boundary and
//! reported as `DCA_STATUS_PANIC`. Strings returned through `char**`
//! out-parameters are owned by the caller and must be released with
//! `dca_string_free`; handles must be released with the matching
//! `*_free`. The committed header `include/dca.h` is regenerated with
//! `cargo build -p dca-ffi --features gen-header`.

use dca_core::axioms::{self, AxiomId};
use dca_core::duality;
use dca_core::error::DcaError;
use dca_core::family::{self, FamilyAxiomId, SetFamily};
use dca_core::func::{PriceVector, SetFunction};
use dca_core::ground::{SubsetMask, DEFAULT_MULTI_EXCHANGE_CAP};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DcaStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// The input failed to parse or violated a precondition.
    InvalidInput = 2,
    /// A size cap was exceeded.
    CapExceeded = 3,
    /// A checked hypothesis does not hold for the input.
    HypothesisViolated = 4,
    /// An internal invariant failed.
    Internal = 5,
    /// A panic was caught at the boundary.
    Panic = 6,
}

/// Opaque handle to a set function.
pub struct DcaFunction {
    inner: SetFunction,
}

/// Opaque handle to a set family.
pub struct DcaFamily {
    inner: SetFamily,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let cstring = CString::new(msg.replace('\0', " "))
        .unwrap_or_else(|_| CString::new("error message had interior nul").expect("static"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(e: &DcaError) -> DcaStatus {
    match e {
        DcaError::CapExceeded { .. }
        | DcaError::MultiExchangeCapExceeded { .. }
        | DcaError::CorpusTooLarge(..) => DcaStatus::CapExceeded,
        DcaError::HypothesisViolated(_) => DcaStatus::HypothesisViolated,
        DcaError::InternalContradiction(_) => DcaStatus::Internal,
        _ => DcaStatus::InvalidInput,
    }
}

fn guard(body: impl FnOnce() -> Result<(), DcaError>) -> DcaStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            clear_error();
            DcaStatus::Ok
        }
        Ok(Err(e)) => {
            let status = status_of(&e);
            set_error(e.to_string());
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic with non-string payload".to_string());
            set_error(format!("panic: {msg}"));
            DcaStatus::Panic
        }
    }
}

/// Reads a required C string argument.
///
/// # Safety
/// `text` must be null or a valid nul-terminated string.
unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, DcaError> {
    if text.is_null() {
        return Err(DcaError::Parse("null string argument".to_string()));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| DcaError::Parse("string argument is not UTF-8".to_string()))
}

fn mask_in(f: &SetFunction, bits: u32) -> Result<SubsetMask, DcaError> {
    let mask = SubsetMask::from_bits(bits);
    if !mask.is_subset_of(f.ground().full_mask()) {
        let el = mask
            .diff(f.ground().full_mask())
            .elements()
            .next()
            .expect("offending element exists");
        return Err(DcaError::InvalidElement { el, n: f.ground().n() });
    }
    Ok(mask)
}

fn prices_in(values: *const f64, len: usize, n: u8) -> Result<PriceVector, DcaError> {
    if values.is_null() {
        return Err(DcaError::Parse("null price vector".to_string()));
    }
    if len != n as usize {
        return Err(DcaError::DimensionMismatch { expected: n as usize, got: len });
    }
    let slice = unsafe { std::slice::from_raw_parts(values, len) };
    PriceVector::new(slice.to_vec())
}

fn give_string(out: *mut *mut c_char, text: String) -> Result<(), DcaError> {
    let cstring = CString::new(text)
        .map_err(|_| DcaError::Parse("output contained an interior nul".to_string()))?;
    unsafe { *out = cstring.into_raw() };
    Ok(())
}

/// Version of the underlying library as a static string.
#[no_mangle]
pub extern "C" fn dca_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message describing the last error on this thread, or null if the
/// last call succeeded. The pointer is owned by the library and is
/// valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn dca_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.as_ptr(),
        None => ptr::null(),
    })
}

/// Releases a string returned through a `char**` out-parameter.
///
/// # Safety
/// `text` must be null or a pointer previously returned by this
/// library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dca_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Parses a JSON function document into a new handle. `max_n` of zero
/// keeps the default ground-set cap.
///
/// # Safety
/// `text` must be a valid nul-terminated string; `out` must be a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn dca_function_parse_json(
    text: *const c_char,
    max_n: u8,
    out: *mut *mut DcaFunction,
) -> DcaStatus {
    if out.is_null() {
        set_error("null out pointer".to_string());
        return DcaStatus::NullPointer;
    }
    guard(|| {
        let text = read_str(text)?;
        let cap = if max_n == 0 { dca_core::ground::DEFAULT_MAX_N } else { max_n };
        let f = dca_core::io::parse_function_json(text, cap)?;
        *out = Box::into_raw(Box::new(DcaFunction { inner: f }));
        Ok(())
    })
}

/// Releases a function handle.
///
/// # Safety
/// `f` must be null or an unfreed handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dca_function_free(f: *mut DcaFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of ground-set elements, or 0 when the handle is null.
///
/// # Safety
/// `f` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn dca_function_n(f: *const DcaFunction) -> u8 {
    match f.as_ref() {
        Some(h) => h.inner.ground().n(),
        None => 0,
    }
}

/// Evaluates the function on the subset encoded by `bits` (bit k set
/// means element k+1 is in the subset). Minus infinity comes back as
/// the IEEE negative infinity.
///
/// # Safety
/// `f` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dca_function_eval(
    f: *const DcaFunction,
    bits: u32,
    out: *mut f64,
) -> DcaStatus {
    let (Some(handle), false) = (f.as_ref(), out.is_null()) else {
        set_error("null handle or out pointer".to_string());
        return DcaStatus::NullPointer;
    };
    guard(|| {
        let mask = mask_in(&handle.inner, bits)?;
        let v = handle.inner.eval(mask);
        *out = if v.is_finite() { v.as_f64() } else { f64::NEG_INFINITY };
        Ok(())
    })
}

/// Serializes the function as a JSON document.
///
/// # Safety
/// `f` and `out` must be valid pointers; release the string with
/// `dca_string_free`.
#[no_mangle]
pub unsafe extern "C" fn dca_function_emit_json(
    f: *const DcaFunction,
    out: *mut *mut c_char,
) -> DcaStatus {
    let (Some(handle), false) = (f.as_ref(), out.is_null()) else {
        set_error("null handle or out pointer".to_string());
        return DcaStatus::NullPointer;
    };
    guard(|| give_string(out, dca_core::io::emit_function_json(&handle.inner)))
}

/// Checks one function axiom by name (for example "MNAT_EXC"). On
/// success `*out_passed` holds the verdict and, when `out_report_json`
/// is non-null, `*out_report_json` holds the full report.
///
/// # Safety
/// `f`, `axiom`, and `out_passed` must be valid pointers;
/// `out_report_json` may be null.
#[no_mangle]
pub unsafe extern "C" fn dca_function_check(
    f: *const DcaFunction,
    axiom: *const c_char,
    out_passed: *mut bool,
    out_report_json: *mut *mut c_char,
) -> DcaStatus {
    let (Some(handle), false) = (f.as_ref(), out_passed.is_null()) else {
        set_error("null handle or out pointer".to_string());
        return DcaStatus::NullPointer;
    };
    guard(|| {
        let id: AxiomId = read_str(axiom)?.parse()?;
        let report = axioms::check_axiom(&handle.inner, id)?;
        *out_passed = report.passed;
        if !out_report_json.is_null() {
            give_string(out_report_json, serde_json::to_string(&report)?)?;
        }
        Ok(())
    })
}

/// Lifts the function by `s` auxiliary elements into a new handle.
///
/// # Safety
/// `f` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dca_function_lift(
    f: *const DcaFunction,
    s: u8,
    out: *mut *mut DcaFunction,
) -> DcaStatus {
    let (Some(handle), false) = (f.as_ref(), out.is_null()) else {
        set_error("null handle or out pointer".to_string());
        return DcaStatus::NullPointer;
    };
    guard(|| {
        let (lifted, _) = handle.inner.lift(s)?;
        *out = Box::into_raw(Box::new(DcaFunction { inner: lifted }));
        Ok(())
    })
}

/// Adds the linear function of `prices` (length `n`) into a new handle.
///
/// # Safety
/// `f`, `prices`, and `out` must be valid pointers; `prices` must have
/// `len` readable elements.
#[no_mangle]
pub unsafe extern "C" fn dca_function_add_linear(
    f: *const DcaFunction,
    prices: *const f64,
    len: usize,
    out: *mut *mut DcaFunction,
) -> DcaStatus {
    let (Some(handle), false) = (f.as_ref(), out.is_null()) else {
        set_error("null handle or out pointer".to_string());
        return DcaStatus::NullPointer;
    };
    guard(|| {
        let p = prices_in(prices, len, handle.inner.ground().n())?;
        let shifted = handle.inner.add_linear(&p)?;
        *out = Box::into_raw(Box::new(DcaFunction { inner: shifted }));
        Ok(())
    })
}

/// Concave conjugate at one price vector: `*out_value` gets
/// `max_Z { f(Z) - p(Z) }` and `*out_argmax` the bits of the first
/// maximizer. The value is negative infinity only when the effective
/// domain is empty.
///
/// # Safety
/// `f`, `prices`, `out_value`, and `out_argmax` must be valid
/// pointers; `prices` must have `len` readable elements.
#[no_mangle]
pub unsafe extern "C" fn dca_function_conjugate(
    f: *const DcaFunction,
    prices: *const f64,
    len: usize,
    out_value: *mut f64,
    out_argmax: *mut u32,
) -> DcaStatus {
    let (Some(handle), false) = (f.as_ref(), out_value.is_null() || out_argmax.is_null()) else {
        set_error("null handle or out pointer".to_string());
        return DcaStatus::NullPointer;
    };
    guard(|| {
        let p = prices_in(prices, len, handle.inner.ground().n())?;
        let (value, argmax) = duality::conjugate_argmax(&handle.inner, &p);
        *out_value = if value.is_finite() { value.as_f64() } else { f64::NEG_INFINITY };
        *out_argmax = argmax.bits();
        Ok(())
    })
}

/// Parses a JSON family document into a new handle. `max_n` of zero
/// keeps the default ground-set cap.
///
/// # Safety
/// `text` must be a valid nul-terminated string; `out` must be a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn dca_family_parse_json(
    text: *const c_char,
    max_n: u8,
    out: *mut *mut DcaFamily,
) -> DcaStatus {
    if out.is_null() {
        set_error("null out pointer".to_string());
        return DcaStatus::NullPointer;
    }
    guard(|| {
        let text = read_str(text)?;
        let cap = if max_n == 0 { dca_core::ground::DEFAULT_MAX_N } else { max_n };
        let fam = dca_core::io::parse_family_json(text, cap)?;
        *out = Box::into_raw(Box::new(DcaFamily { inner: fam }));
        Ok(())
    })
}

/// Releases a family handle.
///
/// # Safety
/// `fam` must be null or an unfreed handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dca_family_free(fam: *mut DcaFamily) {
    if !fam.is_null() {
        drop(Box::from_raw(fam));
    }
}

/// Checks one family axiom by name; "BNAT_EXC_MS" selects the strong
/// multiple form. Same out-parameter contract as `dca_function_check`.
///
/// # Safety
/// `fam`, `axiom`, and `out_passed` must be valid pointers;
/// `out_report_json` may be null.
#[no_mangle]
pub unsafe extern "C" fn dca_family_check(
    fam: *const DcaFamily,
    axiom: *const c_char,
    out_passed: *mut bool,
    out_report_json: *mut *mut c_char,
) -> DcaStatus {
    let (Some(handle), false) = (fam.as_ref(), out_passed.is_null()) else {
        set_error("null handle or out pointer".to_string());
        return DcaStatus::NullPointer;
    };
    guard(|| {
        let name = read_str(axiom)?;
        let report = if name == "BNAT_EXC_MS" {
            family::check_family_multi_strong(&handle.inner, DEFAULT_MULTI_EXCHANGE_CAP)?
        } else {
            let id: FamilyAxiomId = name.parse()?;
            family::check_family(&handle.inner, id)?
        };
        *out_passed = report.passed;
        if !out_report_json.is_null() {
            give_string(out_report_json, serde_json::to_string(&report)?)?;
        }
        Ok(())
    })
}
