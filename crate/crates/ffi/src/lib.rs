//! C ABI for `ncsym`.
//!
//! Every fallible function returns an [`NcsymStatus`] and writes its result
//! through an out-pointer. On failure, [`ncsym_last_error`] returns the
//! message for the calling thread. Handles are opaque and must be released
//! with the matching `_free` function; strings returned by the library are
//! released with [`ncsym_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ncsym::cli::{parse_expression, to_free, to_polynomial, to_quaternion};
use ncsym::ncpoly::LeftPolynomial;
use ncsym::nogo::{nogo_witness_with_seed, NoGoReport};
use ncsym::qn::normal_form;
use ncsym::scalars::Quaternion;
use ncsym::Error;

/// Result codes shared by every function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NcsymStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Input text is not valid UTF-8.
    Utf8 = 2,
    /// Expression syntax error.
    Parse = 3,
    /// Well-formed input used in the wrong context.
    Invalid = 4,
    DivisionByZero = 5,
    /// Singular minor or vanishing Vandermonde quasideterminant.
    Undefined = 6,
    DependentRoots = 7,
    IndexOutOfRange = 8,
    LimitExceeded = 9,
    /// An internal consistency check failed.
    Inconsistent = 10,
    Underdetermined = 11,
    NotForced = 12,
    /// A Rust panic was caught at the boundary.
    Panic = 13,
}

impl From<&Error> for NcsymStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::DivisionByZero => NcsymStatus::DivisionByZero,
            Error::Undefined(_) => NcsymStatus::Undefined,
            Error::DependentRoots(_) => NcsymStatus::DependentRoots,
            Error::IndexOutOfRange(_) | Error::GeneratorOutOfRange { .. } => {
                NcsymStatus::IndexOutOfRange
            }
            Error::LimitExceeded(_) => NcsymStatus::LimitExceeded,
            Error::Inconsistent(_) => NcsymStatus::Inconsistent,
            Error::Underdetermined(_) => NcsymStatus::Underdetermined,
            Error::NotForced(_) => NcsymStatus::NotForced,
            Error::Invalid(_) => NcsymStatus::Invalid,
            Error::Parse { .. } => NcsymStatus::Parse,
        }
    }
}

/// A rational quaternion.
pub struct NcsymQuaternion(Quaternion);

/// A polynomial in a central variable with quaternion coefficients.
pub struct NcsymPolynomial(LeftPolynomial<Quaternion>);

/// Result of the no-go pipeline for one `n`.
pub struct NcsymNogoReport(NoGoReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

struct Failure(NcsymStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(NcsymStatus::from(&e), e.to_string())
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Runs `body`, mapping errors and panics to a status and recording the message.
fn guard(body: impl FnOnce() -> Outcome<()>) -> NcsymStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            NcsymStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("internal panic: {message}"));
            NcsymStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Outcome<&'a str> {
    if p.is_null() {
        return Err(Failure(
            NcsymStatus::NullPointer,
            "null string argument".into(),
        ));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(NcsymStatus::Utf8, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Outcome<&'a T> {
    p.as_ref()
        .ok_or_else(|| Failure(NcsymStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Outcome<()> {
    if out.is_null() {
        return Err(Failure(
            NcsymStatus::NullPointer,
            "null output pointer".into(),
        ));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Outcome<()> {
    if out.is_null() {
        return Err(Failure(
            NcsymStatus::NullPointer,
            "null output pointer".into(),
        ));
    }
    *out = CString::new(s.replace('\0', " "))
        .expect("nul bytes removed")
        .into_raw();
    Ok(())
}

/// Message for the most recent failure on this thread, or null. The caller
/// owns the returned string.
#[no_mangle]
pub extern "C" fn ncsym_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(c) => c.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ncsym_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a quaternion expression such as `1/2+3i-j` or `(1+i)*j`.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ncsym_quaternion_parse(
    text_in: *const c_char,
    out: *mut *mut NcsymQuaternion,
) -> NcsymStatus {
    guard(|| {
        let q = to_quaternion(&parse_expression(text(text_in)?)?)?;
        put(out, NcsymQuaternion(q))
    })
}

/// # Safety
/// `q` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ncsym_quaternion_free(q: *mut NcsymQuaternion) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Canonical text form, e.g. `1/2+3i-j`.
///
/// # Safety
/// `q` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ncsym_quaternion_to_string(
    q: *const NcsymQuaternion,
    out: *mut *mut c_char,
) -> NcsymStatus {
    guard(|| put_string(out, handle(q)?.0.to_string()))
}

/// `a * b`.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ncsym_quaternion_mul(
    a: *const NcsymQuaternion,
    b: *const NcsymQuaternion,
    out: *mut *mut NcsymQuaternion,
) -> NcsymStatus {
    guard(|| {
        let v = &handle(a)?.0 * &handle(b)?.0;
        put(out, NcsymQuaternion(v))
    })
}

/// `a + b`.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ncsym_quaternion_add(
    a: *const NcsymQuaternion,
    b: *const NcsymQuaternion,
    out: *mut *mut NcsymQuaternion,
) -> NcsymStatus {
    guard(|| {
        let v = &handle(a)?.0 + &handle(b)?.0;
        put(out, NcsymQuaternion(v))
    })
}

/// Multiplicative inverse; fails with `DIVISION_BY_ZERO` on zero.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ncsym_quaternion_inverse(
    a: *const NcsymQuaternion,
    out: *mut *mut NcsymQuaternion,
) -> NcsymStatus {
    guard(|| {
        let v = handle(a)?.0.inv()?;
        put(out, NcsymQuaternion(v))
    })
}

/// Parses a polynomial in `t`, e.g. `t^2 - (i+j)*t - k`.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ncsym_polynomial_parse(
    text_in: *const c_char,
    out: *mut *mut NcsymPolynomial,
) -> NcsymStatus {
    guard(|| {
        let p = to_polynomial(&parse_expression(text(text_in)?)?)?;
        put(out, NcsymPolynomial(p))
    })
}

/// # Safety
/// `p` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ncsym_polynomial_free(p: *mut NcsymPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Display form, highest degree first.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ncsym_polynomial_to_string(
    p: *const NcsymPolynomial,
    out: *mut *mut c_char,
) -> NcsymStatus {
    guard(|| put_string(out, handle(p)?.0.to_string()))
}

/// `Σ a_k x^k`, or `Σ x^k a_k` when `right` is true.
///
/// # Safety
/// `p`, `x` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ncsym_polynomial_eval(
    p: *const NcsymPolynomial,
    x: *const NcsymQuaternion,
    right: bool,
    out: *mut *mut NcsymQuaternion,
) -> NcsymStatus {
    guard(|| {
        let (p, x) = (&handle(p)?.0, &handle(x)?.0);
        let v = if right {
            p.eval_right(x)
        } else {
            p.eval_left(x)
        };
        put(out, NcsymQuaternion(v))
    })
}

/// Writes `q` and `r` with `p = q * (t - x) + r`.
///
/// # Safety
/// `p`, `x` must be live handles; `quotient` and `remainder` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ncsym_polynomial_right_divide(
    p: *const NcsymPolynomial,
    x: *const NcsymQuaternion,
    quotient: *mut *mut NcsymPolynomial,
    remainder: *mut *mut NcsymQuaternion,
) -> NcsymStatus {
    guard(|| {
        let p = &handle(p)?.0;
        if p.degree().unwrap_or(0) == 0 {
            return Err(Failure(
                NcsymStatus::Invalid,
                "division needs degree at least 1".into(),
            ));
        }
        if quotient.is_null() || remainder.is_null() {
            return Err(Failure(
                NcsymStatus::NullPointer,
                "null output pointer".into(),
            ));
        }
        let (q, r) = p.right_divide(&handle(x)?.0);
        put(quotient, NcsymPolynomial(q))?;
        put(remainder, NcsymQuaternion(r))
    })
}

/// Normal form in `Q_n` of an expression in `X{..}`, `x{..;i}` and `y<r>`, as JSON.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ncsym_normal_form_json(
    text_in: *const c_char,
    n: u32,
    out: *mut *mut c_char,
) -> NcsymStatus {
    guard(|| {
        let e = to_free(&parse_expression(text(text_in)?)?, Some(n))?;
        let nf = normal_form(&e, n)?;
        put_string(out, serde_json::to_string(&nf).expect("serializable"))
    })
}

/// Runs the no-go pipeline for `Q_n`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ncsym_nogo_run(
    n: u32,
    seed: u64,
    out: *mut *mut NcsymNogoReport,
) -> NcsymStatus {
    guard(|| {
        let report = nogo_witness_with_seed(n, seed)?;
        put(out, NcsymNogoReport(report))
    })
}

/// # Safety
/// `r` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ncsym_nogo_free(r: *mut NcsymNogoReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Whether the obstruction tensor is nonzero.
///
/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ncsym_nogo_witness_nonzero(
    r: *const NcsymNogoReport,
    out: *mut bool,
) -> NcsymStatus {
    guard(|| {
        let v = handle(r)?.0.witness_nonzero;
        if out.is_null() {
            return Err(Failure(
                NcsymStatus::NullPointer,
                "null output pointer".into(),
            ));
        }
        *out = v;
        Ok(())
    })
}

/// The obstruction tensor in display form.
///
/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ncsym_nogo_witness_string(
    r: *const NcsymNogoReport,
    out: *mut *mut c_char,
) -> NcsymStatus {
    guard(|| put_string(out, handle(r)?.0.witness.to_string()))
}

/// The full report as JSON.
///
/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ncsym_nogo_json(
    r: *const NcsymNogoReport,
    out: *mut *mut c_char,
) -> NcsymStatus {
    guard(|| {
        put_string(
            out,
            serde_json::to_string(&handle(r)?.0).expect("serializable"),
        )
    })
}

/// The step-by-step text transcript.
///
/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ncsym_nogo_transcript(
    r: *const NcsymNogoReport,
    out: *mut *mut c_char,
) -> NcsymStatus {
    guard(|| put_string(out, handle(r)?.0.transcript()))
}
