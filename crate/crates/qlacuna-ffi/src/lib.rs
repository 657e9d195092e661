//! C ABI for the qlacuna library.
//!
//! Polynomials and certificates are exposed as opaque handles created and
//! destroyed by this library; every function is null-safe and reports
//! failures through [`QlacunaStatus`]. Strings returned by `*_to_json`,
//! `*_to_text` and `*_eval_at_one` are owned C strings that must be
//! released with `qlacuna_string_free`.
//!
//! The header `include/qlacuna.h` is generated by cbindgen at build time.

use std::ffi::{c_char, c_int, CStr, CString};

use qlacuna::certificate::Certificate;
use qlacuna::lacunary::{self, LacunaryParams};
use qlacuna::polyring::IntPoly;
use qlacuna::{cyclotomic, qcombo};

/// Result of a C API call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QlacunaStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A parameter was outside the supported domain.
    InvalidArgument = 2,
    /// Malformed JSON or text input.
    ParseError = 3,
    /// Exact division had a nonzero remainder.
    NotDivisible = 4,
}

/// Opaque handle to a dense integer polynomial in `q`.
pub struct QlacunaPoly {
    inner: IntPoly,
}

/// Opaque handle to a verification certificate.
pub struct QlacunaCertificate {
    inner: Certificate,
}

fn boxed_poly(p: IntPoly) -> *mut QlacunaPoly {
    Box::into_raw(Box::new(QlacunaPoly { inner: p }))
}

fn owned_string(s: String) -> *mut c_char {
    match CString::new(s) {
        Ok(c) => c.into_raw(),
        Err(_) => std::ptr::null_mut(),
    }
}

unsafe fn poly_ref<'a>(p: *const QlacunaPoly) -> Option<&'a IntPoly> {
    p.as_ref().map(|h| &h.inner)
}

/// Builds a polynomial from `len` coefficients (`coeffs[i]` is the
/// coefficient of `q^i`). `coeffs` may be null only when `len == 0`,
/// which yields the zero polynomial.
///
/// # Safety
/// `coeffs` must point to at least `len` readable `int64_t`s, and `out`
/// must be a valid location to store the new handle.
#[no_mangle]
pub unsafe extern "C" fn qlacuna_poly_from_coeffs(
    coeffs: *const i64,
    len: usize,
    out: *mut *mut QlacunaPoly,
) -> QlacunaStatus {
    if out.is_null() || (coeffs.is_null() && len > 0) {
        return QlacunaStatus::NullArgument;
    }
    let slice = if len == 0 {
        &[]
    } else {
        std::slice::from_raw_parts(coeffs, len)
    };
    *out = boxed_poly(IntPoly::from_i64_coeffs(slice));
    QlacunaStatus::Ok
}

/// Parses the canonical JSON form: an array of decimal coefficient
/// strings, index = exponent.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid store.
#[no_mangle]
pub unsafe extern "C" fn qlacuna_poly_parse_json(
    json: *const c_char,
    out: *mut *mut QlacunaPoly,
) -> QlacunaStatus {
    if json.is_null() || out.is_null() {
        return QlacunaStatus::NullArgument;
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(_) => return QlacunaStatus::ParseError,
    };
    let value: serde_json::Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(_) => return QlacunaStatus::ParseError,
    };
    match IntPoly::from_json(&value) {
        Ok(p) => {
            *out = boxed_poly(p);
            QlacunaStatus::Ok
        }
        Err(_) => QlacunaStatus::ParseError,
    }
}

/// Canonical JSON form of a polynomial; null on null input.
///
/// # Safety
/// `p` must be a live handle from this library (or null).
#[no_mangle]
pub unsafe extern "C" fn qlacuna_poly_to_json(p: *const QlacunaPoly) -> *mut c_char {
    match poly_ref(p) {
        Some(poly) => owned_string(poly.to_json().to_string()),
        None => std::ptr::null_mut(),
    }
}

/// Canonical text form (`c0 + c1*q + ...`); null on null input.
///
/// # Safety
/// `p` must be a live handle from this library (or null).
#[no_mangle]
pub unsafe extern "C" fn qlacuna_poly_to_text(p: *const QlacunaPoly) -> *mut c_char {
    match poly_ref(p) {
        Some(poly) => owned_string(poly.to_string()),
        None => std::ptr::null_mut(),
    }
}

/// Degree of the polynomial, with `-1` standing in for the zero
/// polynomial at this boundary.
///
/// # Safety
/// `p` must be a live handle (or null) and `out_degree` a valid store.
#[no_mangle]
pub unsafe extern "C" fn qlacuna_poly_degree(
    p: *const QlacunaPoly,
    out_degree: *mut i64,
) -> QlacunaStatus {
    match (poly_ref(p), out_degree.as_mut()) {
        (Some(poly), Some(out)) => {
            *out = poly.degree().map_or(-1, |d| d as i64);
            QlacunaStatus::Ok
        }
        _ => QlacunaStatus::NullArgument,
    }
}

/// 1 when the handle is the zero polynomial, 0 otherwise, -1 on null.
///
/// # Safety
/// `p` must be a live handle from this library (or null).
#[no_mangle]
pub unsafe extern "C" fn qlacuna_poly_is_zero(p: *const QlacunaPoly) -> c_int {
    match poly_ref(p) {
        Some(poly) => poly.is_zero() as c_int,
        None => -1,
    }
}

unsafe fn binary_op(
    a: *const QlacunaPoly,
    b: *const QlacunaPoly,
    out: *mut *mut QlacunaPoly,
    f: impl Fn(&IntPoly, &IntPoly) -> IntPoly,
) -> QlacunaStatus {
    match (poly_ref(a), poly_ref(b)) {
        (Some(a), Some(b)) if !out.is_null() => {
            *out = boxed_poly(f(a, b));
            QlacunaStatus::Ok
        }
        _ => QlacunaStatus::NullArgument,
    }
}

/// `out = a + b`.
///
/// # Safety
/// All handles must be live; `out` must be a valid store.
#[no_mangle]
pub unsafe extern "C" fn qlacuna_poly_add(
    a: *const QlacunaPoly,
    b: *const QlacunaPoly,
    out: *mut *mut QlacunaPoly,
) -> QlacunaStatus {
    binary_op(a, b, out, IntPoly::add)
}

/// `out = a - b`.
///
/// # Safety
/// All handles must be live; `out` must be a valid store.
#[no_mangle]
pub unsafe extern "C" fn qlacuna_poly_sub(
    a: *const QlacunaPoly,
    b: *const QlacunaPoly,
    out: *mut *mut QlacunaPoly,
) -> QlacunaStatus {
    binary_op(a, b, out, IntPoly::sub)
}

/// `out = a * b`.
///
/// # Safety
/// All handles must be live; `out` must be a valid store.
#[no_mangle]
pub unsafe extern "C" fn qlacuna_poly_mul(
    a: *const QlacunaPoly,
    b: *const QlacunaPoly,
    out: *mut *mut QlacunaPoly,
) -> QlacunaStatus {
    binary_op(a, b, out, IntPoly::mul)
}

/// Exact division over `Z[q]`: `out = a / b` when the division is exact.
/// Returns `NotDivisible` (with `*out` set to null) when it is not, and
/// `InvalidArgument` when `b` is zero.
///
/// # Safety
/// All handles must be live; `out` must be a valid store.
#[no_mangle]
pub unsafe extern "C" fn qlacuna_poly_div_exact(
    a: *const QlacunaPoly,
    b: *const QlacunaPoly,
    out: *mut *mut QlacunaPoly,
) -> QlacunaStatus {
    let (a, b) = match (poly_ref(a), poly_ref(b)) {
        (Some(a), Some(b)) if !out.is_null() => (a, b),
        _ => return QlacunaStatus::NullArgument,
    };
    *out = std::ptr::null_mut();
    match a.div_exact(b) {
        Ok(Some(q)) => {
            *out = boxed_poly(q);
            QlacunaStatus::Ok
        }
        Ok(None) => QlacunaStatus::NotDivisible,
        Err(_) => QlacunaStatus::InvalidArgument,
    }
}

/// Remainder of `a` modulo the monic polynomial `m`.
/// `InvalidArgument` when `m` is not monic of degree >= 1.
///
/// # Safety
/// All handles must be live; `out` must be a valid store.
#[no_mangle]
pub unsafe extern "C" fn qlacuna_poly_reduce_mod(
    a: *const QlacunaPoly,
    m: *const QlacunaPoly,
    out: *mut *mut QlacunaPoly,
) -> QlacunaStatus {
    let (a, m) = match (poly_ref(a), poly_ref(m)) {
        (Some(a), Some(m)) if !out.is_null() => (a, m),
        _ => return QlacunaStatus::NullArgument,
    };
    match a.reduce_mod(m) {
        Ok(r) => {
            *out = boxed_poly(r);
            QlacunaStatus::Ok
        }
        Err(_) => QlacunaStatus::InvalidArgument,
    }
}

/// Value at `q = 1` as a decimal string; null on null input.
///
/// # Safety
/// `p` must be a live handle from this library (or null).
#[no_mangle]
pub unsafe extern "C" fn qlacuna_poly_eval_at_one(p: *const QlacunaPoly) -> *mut c_char {
    match poly_ref(p) {
        Some(poly) => owned_string(poly.eval_at_one().to_string()),
        None => std::ptr::null_mut(),
    }
}

/// The d-th cyclotomic polynomial (`d >= 1`).
///
/// # Safety
/// `out` must be a valid store.
#[no_mangle]
pub unsafe extern "C" fn qlacuna_cyclotomic(d: u64, out: *mut *mut QlacunaPoly) -> QlacunaStatus {
    if out.is_null() {
        return QlacunaStatus::NullArgument;
    }
    if d == 0 {
        return QlacunaStatus::InvalidArgument;
    }
    *out = boxed_poly(cyclotomic::cyclotomic(d));
    QlacunaStatus::Ok
}

/// The Gaussian binomial `[n, k]_q` (zero outside `0 <= k <= n`).
///
/// # Safety
/// `out` must be a valid store.
#[no_mangle]
pub unsafe extern "C" fn qlacuna_q_binomial(
    n: u64,
    k: i64,
    out: *mut *mut QlacunaPoly,
) -> QlacunaStatus {
    if out.is_null() {
        return QlacunaStatus::NullArgument;
    }
    *out = boxed_poly(qcombo::q_binomial(n, k));
    QlacunaStatus::Ok
}

/// The q-factorial `[n]_q!`.
///
/// # Safety
/// `out` must be a valid store.
#[no_mangle]
pub unsafe extern "C" fn qlacuna_q_factorial(n: u64, out: *mut *mut QlacunaPoly) -> QlacunaStatus {
    if out.is_null() {
        return QlacunaStatus::NullArgument;
    }
    *out = boxed_poly(qcombo::q_factorial(n));
    QlacunaStatus::Ok
}

unsafe fn verify_lacunary(
    n: u32,
    c: u32,
    r: i64,
    l: u32,
    h: i64,
    out: *mut *mut QlacunaCertificate,
    f: impl Fn(&LacunaryParams) -> Certificate,
) -> QlacunaStatus {
    if out.is_null() {
        return QlacunaStatus::NullArgument;
    }
    match LacunaryParams::new(n, c, r, l, h) {
        Ok(params) => {
            *out = Box::into_raw(Box::new(QlacunaCertificate { inner: f(&params) }));
            QlacunaStatus::Ok
        }
        Err(_) => QlacunaStatus::InvalidArgument,
    }
}

/// Verifies the lacunary-sum divisibility theorem for one tuple and
/// returns the certificate.
///
/// # Safety
/// `out` must be a valid store.
#[no_mangle]
pub unsafe extern "C" fn qlacuna_verify_theorem1(
    n: u32,
    c: u32,
    r: i64,
    l: u32,
    h: i64,
    out: *mut *mut QlacunaCertificate,
) -> QlacunaStatus {
    verify_lacunary(n, c, r, l, h, out, lacunary::verify_theorem1)
}

/// Verifies the power-factor corollary for one tuple.
///
/// # Safety
/// `out` must be a valid store.
#[no_mangle]
pub unsafe extern "C" fn qlacuna_verify_corollary1(
    n: u32,
    c: u32,
    r: i64,
    l: u32,
    h: i64,
    out: *mut *mut QlacunaCertificate,
) -> QlacunaStatus {
    verify_lacunary(n, c, r, l, h, out, lacunary::verify_corollary1)
}

/// 1 when the certificate holds, 0 when it fails, -1 on null.
///
/// # Safety
/// `cert` must be a live handle from this library (or null).
#[no_mangle]
pub unsafe extern "C" fn qlacuna_certificate_holds(cert: *const QlacunaCertificate) -> c_int {
    match cert.as_ref() {
        Some(c) => c.inner.holds as c_int,
        None => -1,
    }
}

/// JSON form of a certificate; null on null input.
///
/// # Safety
/// `cert` must be a live handle from this library (or null).
#[no_mangle]
pub unsafe extern "C" fn qlacuna_certificate_to_json(
    cert: *const QlacunaCertificate,
) -> *mut c_char {
    match cert.as_ref() {
        Some(c) => owned_string(c.inner.to_json(false).to_string()),
        None => std::ptr::null_mut(),
    }
}

/// Releases a polynomial handle. Null is a no-op.
///
/// # Safety
/// `p` must have come from this library and not been freed already.
#[no_mangle]
pub unsafe extern "C" fn qlacuna_poly_free(p: *mut QlacunaPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Releases a certificate handle. Null is a no-op.
///
/// # Safety
/// `cert` must have come from this library and not been freed already.
#[no_mangle]
pub unsafe extern "C" fn qlacuna_certificate_free(cert: *mut QlacunaCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must have come from this library and not been freed already.
#[no_mangle]
pub unsafe extern "C" fn qlacuna_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
