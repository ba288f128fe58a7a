//! C ABI for jetcalc.
//!
//! Conventions:
//! - every fallible function returns a [`JcStatus`]; results come back
//!   through out-pointers, which are left untouched on failure;
//! - polynomials are opaque [`JcPolynomial`] handles released with
//!   [`jc_poly_free`];
//! - strings handed out by the library are NUL-terminated UTF-8 and must be
//!   released with [`jc_string_free`];
//! - after a failure, [`jc_last_error_message`] describes it. The message is
//!   per thread and stays valid until the next call on that thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use jetcalc::bound::{buium_curve_bound, theorem_b_bound, SegreDegreeVector};
use jetcalc::cli::{parse_generator_file, CiConfig};
use jetcalc::delta::{delta_iter, frobenius_substitution, DeltaContext};
use jetcalc::jet::jet_presentation;
use jetcalc::{Error, Polynomial};
use num_bigint::BigInt;

/// Result codes shared by every function of the C interface.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JcStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    SyntaxError = 3,
    NotDivisible = 4,
    ResourceLimit = 5,
    InvalidPrime = 6,
    InvalidInput = 7,
    InvalidSeries = 8,
    AmbientMismatch = 9,
    MissingIntersectionNumber = 10,
    HypothesisViolation = 11,
    LengthMismatch = 12,
    Internal = 13,
    Panic = 14,
}

impl From<&Error> for JcStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Syntax { .. } => JcStatus::SyntaxError,
            Error::NotDivisible { .. } => JcStatus::NotDivisible,
            Error::ResourceLimit { .. } => JcStatus::ResourceLimit,
            Error::InvalidPrime { .. } => JcStatus::InvalidPrime,
            Error::InvalidInput(_) => JcStatus::InvalidInput,
            Error::InvalidSeries(_) => JcStatus::InvalidSeries,
            Error::AmbientMismatch(_) => JcStatus::AmbientMismatch,
            Error::MissingIntersectionNumber(_) => JcStatus::MissingIntersectionNumber,
            Error::HypothesisViolation(_) => JcStatus::HypothesisViolation,
            Error::LengthMismatch { .. } => JcStatus::LengthMismatch,
            Error::Internal(_) => JcStatus::Internal,
        }
    }
}

/// Opaque polynomial handle.
pub struct JcPolynomial(Polynomial);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

struct Failure(JcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(JcStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(JcStatus::NullArgument, format!("`{what}` is NULL"))
}

// Runs `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> JcStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => JcStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            JcStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(JcStatus::InvalidUtf8, format!("`{what}` is not valid UTF-8")))
}

unsafe fn read_poly<'a>(h: *const JcPolynomial, what: &str) -> Result<&'a Polynomial, Failure> {
    h.as_ref().map(|h| &h.0).ok_or_else(|| null(what))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(JcStatus::Internal, "output contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_poly(out: *mut *mut JcPolynomial, f: Polynomial) {
    *out = Box::into_raw(Box::new(JcPolynomial(f)));
}

/// Parses `text` into a new polynomial handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jc_poly_parse(text: *const c_char, out: *mut *mut JcPolynomial) -> JcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let f: Polynomial = read_str(text, "text")?.parse()?;
        write_poly(out, f);
        Ok(())
    })
}

/// Canonical text form of `poly`; release with [`jc_string_free`].
///
/// # Safety
/// `poly` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jc_poly_to_string(poly: *const JcPolynomial, out: *mut *mut c_char) -> JcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let f = read_poly(poly, "poly")?;
        write_string(out, f.to_string())
    })
}

/// Releases a polynomial handle. NULL is ignored.
///
/// # Safety
/// `poly` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jc_poly_free(poly: *mut JcPolynomial) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn jc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `delta` applied `r >= 1` times at the odd prime `p`.
///
/// # Safety
/// `poly` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jc_delta(
    poly: *const JcPolynomial,
    p: u64,
    r: u32,
    out: *mut *mut JcPolynomial,
) -> JcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let f = read_poly(poly, "poly")?;
        let ctx = DeltaContext::new(p)?;
        write_poly(out, delta_iter(f, &ctx, r)?);
        Ok(())
    })
}

/// The Frobenius lift `v@k -> v@k^p + p v@(k+1)` applied to `poly`.
///
/// # Safety
/// `poly` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jc_frobenius(
    poly: *const JcPolynomial,
    p: u64,
    out: *mut *mut JcPolynomial,
) -> JcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let f = read_poly(poly, "poly")?;
        let ctx = DeltaContext::new(p)?;
        write_poly(out, frobenius_substitution(f, &ctx)?);
        Ok(())
    })
}

/// Jet presentation JSON of order `r` for the generators in `gens_text`
/// (one polynomial per line, `#` comments).
///
/// # Safety
/// `gens_text` must be a NUL-terminated string and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jc_jet_presentation(
    gens_text: *const c_char,
    p: u64,
    r: u32,
    out_json: *mut *mut c_char,
) -> JcStatus {
    guard(|| {
        if out_json.is_null() {
            return Err(null("out_json"));
        }
        let gens = parse_generator_file(read_str(gens_text, "gens_text")?)?;
        let ctx = DeltaContext::new(p)?;
        write_string(out_json, jet_presentation(&gens, &ctx, r)?.to_json())
    })
}

/// Bound report JSON for a genus-`g` curve in its Jacobian.
///
/// # Safety
/// `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jc_bound_curve(p: u64, g: u32, out_json: *mut *mut c_char) -> JcStatus {
    guard(|| {
        if out_json.is_null() {
            return Err(null("out_json"));
        }
        write_string(out_json, buium_curve_bound(p, g)?.to_json())
    })
}

/// Bound report JSON from the Segre degrees `segre[0..len]`.
///
/// # Safety
/// `segre` must point to `len` integers (it may be NULL when `len == 0`) and
/// `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jc_bound_general(
    p: u64,
    n: u32,
    d: u32,
    segre: *const i64,
    len: usize,
    out_json: *mut *mut c_char,
) -> JcStatus {
    guard(|| {
        if out_json.is_null() {
            return Err(null("out_json"));
        }
        let entries: &[i64] = if len == 0 {
            &[]
        } else if segre.is_null() {
            return Err(null("segre"));
        } else {
            std::slice::from_raw_parts(segre, len)
        };
        let v: SegreDegreeVector = entries.iter().map(|&x| BigInt::from(x)).collect();
        write_string(out_json, theorem_b_bound(p, n, d, &v)?.to_json())
    })
}

/// Bound report JSON for a complete intersection described by
/// `config_json`. `p = 0` takes the prime from the configuration.
///
/// # Safety
/// `config_json` must be a NUL-terminated string and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jc_bound_ci(
    config_json: *const c_char,
    p: u64,
    out_json: *mut *mut c_char,
) -> JcStatus {
    guard(|| {
        if out_json.is_null() {
            return Err(null("out_json"));
        }
        let config = CiConfig::from_json(read_str(config_json, "config_json")?)?;
        let report = config.bound(if p == 0 { None } else { Some(p) })?;
        write_string(out_json, report.to_json())
    })
}

/// Message describing the last failure on this thread, or NULL after a
/// success. Owned by the library; do not free.
#[no_mangle]
pub extern "C" fn jc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
