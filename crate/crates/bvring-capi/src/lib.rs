//! C interface to the bvring engine.
//!
//! Every function is panic-safe: panics are caught at the boundary and
//! reported as [`BvStatus::Panicked`]. Handles are opaque; free them
//! with the matching `bv_*_free` function. Strings returned through
//! `char **` out-parameters are heap-allocated and must be released
//! with [`bv_string_free`]. Rationals cross the boundary as strings
//! (`"3"`, `"-7/2"`) so no precision is lost.
//!
//! On failure the returned status is accompanied by a thread-local
//! message retrievable via [`bv_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use bvring::json::{element_json, matrix_json, params_json, JsonRational};
use bvring::ring::{RingElement, RingParams};
use bvring::spectral::{build_gram, verify_kernel_generated};
use bvring::{Bounds, Error, Rational};
use serde::Serialize;

/// Result of a C API call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BvStatus {
    /// The call succeeded.
    Ok = 0,
    /// A pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// An argument was rejected (bad index, malformed rational, ...).
    InvalidArgument = 3,
    /// An expression failed to parse; see `bv_last_error`.
    ParseError = 4,
    /// An expression parsed but could not be evaluated in this ring.
    EvalError = 5,
    /// A computation exceeded the configured dimension bound.
    ResourceExceeded = 6,
    /// An internal panic was caught at the boundary.
    Panicked = 7,
}

/// Opaque ring parameter handle.
pub struct BvParams(RingParams);

/// Opaque ring element handle.
pub struct BvElement(RingElement);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn remember_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_for(e: &Error) -> BvStatus {
    match e {
        Error::Parse { .. } => BvStatus::ParseError,
        Error::Eval { .. } => BvStatus::EvalError,
        Error::ResourceExceeded(_) => BvStatus::ResourceExceeded,
        _ => BvStatus::InvalidArgument,
    }
}

fn fail(e: &Error) -> BvStatus {
    remember_error(&e.to_string());
    status_for(e)
}

fn fail_with(status: BvStatus, msg: &str) -> BvStatus {
    remember_error(msg);
    status
}

/// Runs a closure behind `catch_unwind`, converting panics to a status.
fn guarded(f: impl FnOnce() -> BvStatus) -> BvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail_with(BvStatus::Panicked, "internal panic"),
    }
}

/// Reads a borrowed C string argument.
///
/// # Safety
/// `p` must be null or point to a nul-terminated string.
unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, BvStatus> {
    if p.is_null() {
        return Err(fail_with(BvStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail_with(BvStatus::InvalidUtf8, "string argument is not UTF-8"))
}

fn parse_rational(text: &str) -> Result<Rational, BvStatus> {
    Rational::from_str(text).map_err(|e| {
        fail_with(
            BvStatus::InvalidArgument,
            &format!("malformed rational {text:?}: {e}"),
        )
    })
}

/// Reads an array of rational strings.
///
/// # Safety
/// `items` must be null (only if `len == 0`) or point to `len` valid
/// C strings.
unsafe fn read_rationals(
    items: *const *const c_char,
    len: usize,
) -> Result<Vec<Rational>, BvStatus> {
    if len == 0 {
        return Ok(Vec::new());
    }
    if items.is_null() {
        return Err(fail_with(BvStatus::NullPointer, "null degree array"));
    }
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        let text = read_str(*items.add(k))?;
        out.push(parse_rational(text)?);
    }
    Ok(out)
}

fn write_handle<T>(value: T, out: *mut *mut T) -> BvStatus {
    if out.is_null() {
        return fail_with(BvStatus::NullPointer, "null out-parameter");
    }
    unsafe { *out = Box::into_raw(Box::new(value)) };
    BvStatus::Ok
}

fn write_string(value: String, out: *mut *mut c_char) -> BvStatus {
    if out.is_null() {
        return fail_with(BvStatus::NullPointer, "null out-parameter");
    }
    match CString::new(value) {
        Ok(s) => {
            unsafe { *out = s.into_raw() };
            BvStatus::Ok
        }
        Err(_) => fail_with(BvStatus::Panicked, "output contained a nul byte"),
    }
}

fn write_json<T: Serialize>(value: &T, out: *mut *mut c_char) -> BvStatus {
    match serde_json::to_string(value) {
        Ok(s) => write_string(s, out),
        Err(e) => fail_with(BvStatus::Panicked, &format!("serialization failed: {e}")),
    }
}

/// Borrows a handle passed in from C.
///
/// # Safety
/// `p` must be null or a live pointer previously produced by this
/// library.
unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, BvStatus> {
    p.as_ref()
        .ok_or_else(|| fail_with(BvStatus::NullPointer, "null handle"))
}

fn bounds_for(max_dim: usize) -> Bounds {
    if max_dim == 0 {
        Bounds::default()
    } else {
        Bounds { max_dim }
    }
}

/// Returns the message for the most recent failure on this thread. The
/// pointer stays valid until the next failing call on the same thread;
/// do not free it.
#[no_mangle]
pub extern "C" fn bv_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Creates ring parameters with `n` factors, one divisor class per
/// degree string, and transcendental parameter `x`.
///
/// # Safety
/// `degrees` must point to `num_degrees` valid C strings (or be null if
/// `num_degrees == 0`); `x` must be a valid C string; `out` must be a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bv_params_new(
    n: u32,
    degrees: *const *const c_char,
    num_degrees: usize,
    x: *const c_char,
    out: *mut *mut BvParams,
) -> BvStatus {
    guarded(|| {
        let degrees = match read_rationals(degrees, num_degrees) {
            Ok(v) => v,
            Err(s) => return s,
        };
        let x = match read_str(x).and_then(parse_rational) {
            Ok(v) => v,
            Err(s) => return s,
        };
        match RingParams::new(n, degrees, x) {
            Ok(p) => write_handle(BvParams(p), out),
            Err(e) => fail(&e),
        }
    })
}

/// Creates ring parameters in the geometric regime, with `x` set to
/// `22` minus the number of degree strings.
///
/// # Safety
/// As for [`bv_params_new`], without the `x` argument.
#[no_mangle]
pub unsafe extern "C" fn bv_params_k3(
    n: u32,
    degrees: *const *const c_char,
    num_degrees: usize,
    out: *mut *mut BvParams,
) -> BvStatus {
    guarded(|| {
        let degrees = match read_rationals(degrees, num_degrees) {
            Ok(v) => v,
            Err(s) => return s,
        };
        match RingParams::k3(n, degrees) {
            Ok(p) => write_handle(BvParams(p), out),
            Err(e) => fail(&e),
        }
    })
}

/// Writes the parameter summary `{"n","rho","degrees","x"}` as JSON.
///
/// # Safety
/// `params` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bv_params_json(
    params: *const BvParams,
    out: *mut *mut c_char,
) -> BvStatus {
    guarded(|| match borrow(params) {
        Ok(p) => write_json(&params_json(&p.0), out),
        Err(s) => s,
    })
}

/// Frees a parameter handle. Null is ignored.
///
/// # Safety
/// `params` must be null or a handle produced by this library that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn bv_params_free(params: *mut BvParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// Parses an expression in the `o/l/tau/delta` grammar and normalizes
/// it in the given ring.
///
/// # Safety
/// `params` must be a live handle, `src` a valid C string, `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bv_element_parse(
    params: *const BvParams,
    src: *const c_char,
    out: *mut *mut BvElement,
) -> BvStatus {
    guarded(|| {
        let p = match borrow(params) {
            Ok(p) => p,
            Err(s) => return s,
        };
        let src = match read_str(src) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match bvring::expr::eval_str(src, &p.0) {
            Ok(e) => write_handle(BvElement(e), out),
            Err(e) => fail(&e),
        }
    })
}

/// Frees an element handle. Null is ignored.
///
/// # Safety
/// `element` must be null or a handle produced by this library that
/// has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn bv_element_free(element: *mut BvElement) {
    if !element.is_null() {
        drop(Box::from_raw(element));
    }
}

unsafe fn element_binop(
    lhs: *const BvElement,
    rhs: *const BvElement,
    out: *mut *mut BvElement,
    op: impl Fn(&RingElement, &RingElement) -> bvring::Result<RingElement>,
) -> BvStatus {
    let a = match borrow(lhs) {
        Ok(a) => a,
        Err(s) => return s,
    };
    let b = match borrow(rhs) {
        Ok(b) => b,
        Err(s) => return s,
    };
    match op(&a.0, &b.0) {
        Ok(e) => write_handle(BvElement(e), out),
        Err(e) => fail(&e),
    }
}

/// Writes the sum of two elements of the same ring.
///
/// # Safety
/// `lhs` and `rhs` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bv_element_add(
    lhs: *const BvElement,
    rhs: *const BvElement,
    out: *mut *mut BvElement,
) -> BvStatus {
    guarded(|| element_binop(lhs, rhs, out, RingElement::checked_add))
}

/// Writes the product of two elements of the same ring.
///
/// # Safety
/// `lhs` and `rhs` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bv_element_mul(
    lhs: *const BvElement,
    rhs: *const BvElement,
    out: *mut *mut BvElement,
) -> BvStatus {
    guarded(|| element_binop(lhs, rhs, out, RingElement::checked_mul))
}

/// Writes the canonical text form, parseable by [`bv_element_parse`].
///
/// # Safety
/// `element` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bv_element_text(
    element: *const BvElement,
    out: *mut *mut c_char,
) -> BvStatus {
    guarded(|| match borrow(element) {
        Ok(e) => write_string(e.0.to_string(), out),
        Err(s) => s,
    })
}

/// Writes the element as JSON: `{"n","terms":[...]}` with exact
/// string coefficients.
///
/// # Safety
/// `element` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bv_element_json(
    element: *const BvElement,
    out: *mut *mut c_char,
) -> BvStatus {
    guarded(|| match borrow(element) {
        Ok(e) => write_json(&element_json(&e.0), out),
        Err(s) => s,
    })
}

/// Writes the intersection pairing of two homogeneous elements of
/// complementary codegree as a rational string.
///
/// # Safety
/// `lhs` and `rhs` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bv_element_pair(
    lhs: *const BvElement,
    rhs: *const BvElement,
    out: *mut *mut c_char,
) -> BvStatus {
    guarded(|| {
        let a = match borrow(lhs) {
            Ok(a) => a,
            Err(s) => return s,
        };
        let b = match borrow(rhs) {
            Ok(b) => b,
            Err(s) => return s,
        };
        match a.0.pair(&b.0) {
            Ok(v) => write_string(v.to_string(), out),
            Err(e) => fail(&e),
        }
    })
}

#[derive(Serialize)]
struct GramJson {
    d: u32,
    x: JsonRational,
    dim: usize,
    matrix: Vec<Vec<JsonRational>>,
}

/// Writes the matching-form Gram matrix on `d` points at rational `x`
/// as JSON `{"d","x","dim","matrix"}`. Pass `max_dim = 0` for the
/// default resource bound.
///
/// # Safety
/// `x` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bv_gram_json(
    d: u32,
    x: *const c_char,
    max_dim: usize,
    out: *mut *mut c_char,
) -> BvStatus {
    guarded(|| {
        let x = match read_str(x).and_then(parse_rational) {
            Ok(v) => v,
            Err(s) => return s,
        };
        match build_gram(d, x.clone(), &bounds_for(max_dim)) {
            Ok(g) => {
                let doc = GramJson {
                    d,
                    x: JsonRational(x),
                    dim: g.dim(),
                    matrix: matrix_json(&g.evaluated()),
                };
                write_json(&doc, out)
            }
            Err(e) => fail(&e),
        }
    })
}

/// Runs the kernel-generation check on `d` points at integer `x >= 1`,
/// writes the JSON report, and stores the verdict in `pass`. Pass
/// `max_dim = 0` for the default resource bound.
///
/// # Safety
/// `out` and `pass` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn bv_verify_kernel_generated(
    d: u32,
    x: u32,
    max_dim: usize,
    out: *mut *mut c_char,
    pass: *mut bool,
) -> BvStatus {
    guarded(|| {
        if pass.is_null() {
            return fail_with(BvStatus::NullPointer, "null out-parameter");
        }
        match verify_kernel_generated(d, x, &bounds_for(max_dim)) {
            Ok(report) => {
                *pass = report.pass;
                write_json(&report, out)
            }
            Err(e) => fail(&e),
        }
    })
}

/// Frees a string produced by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string produced by this library that has not
/// been freed yet.
#[no_mangle]
pub unsafe extern "C" fn bv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take_string(p: *mut c_char) -> String {
        let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
        bv_string_free(p);
        s
    }

    unsafe fn k3_params(n: u32, degrees: &[&str]) -> *mut BvParams {
        let owned: Vec<CString> = degrees.iter().map(|d| c(d)).collect();
        let ptrs: Vec<*const c_char> = owned.iter().map(|d| d.as_ptr()).collect();
        let mut p: *mut BvParams = ptr::null_mut();
        let status = bv_params_k3(n, ptrs.as_ptr(), ptrs.len(), &mut p);
        assert_eq!(status, BvStatus::Ok);
        p
    }

    #[test]
    fn params_round_trip() {
        unsafe {
            let p = k3_params(3, &["2"]);
            let mut text: *mut c_char = ptr::null_mut();
            assert_eq!(bv_params_json(p, &mut text), BvStatus::Ok);
            assert_eq!(take_string(text), r#"{"n":3,"rho":1,"degrees":[2],"x":21}"#);
            bv_params_free(p);
        }
    }

    #[test]
    fn parse_normalize_and_pair() {
        unsafe {
            let p = k3_params(2, &["2"]);
            let mut e: *mut BvElement = ptr::null_mut();
            let src = c("delta(1,2)");
            assert_eq!(bv_element_parse(p, src.as_ptr(), &mut e), BvStatus::Ok);

            let mut text: *mut c_char = ptr::null_mut();
            assert_eq!(bv_element_text(e, &mut text), BvStatus::Ok);
            assert_eq!(
                take_string(text),
                "o(1) + o(2) + 1/2*l(1,1)*l(1,2) + tau(1,2)"
            );

            let mut paired: *mut c_char = ptr::null_mut();
            assert_eq!(bv_element_pair(e, e, &mut paired), BvStatus::Ok);
            assert_eq!(take_string(paired), "24");

            let mut square: *mut BvElement = ptr::null_mut();
            assert_eq!(bv_element_mul(e, e, &mut square), BvStatus::Ok);
            let mut json: *mut c_char = ptr::null_mut();
            assert_eq!(bv_element_json(square, &mut json), BvStatus::Ok);
            assert_eq!(
                take_string(json),
                r#"{"n":2,"terms":[{"coef":"24","tau_pairs":[],"l_factors":[],"o_indices":[1,2]}]}"#
            );

            bv_element_free(square);
            bv_element_free(e);
            bv_params_free(p);
        }
    }

    #[test]
    fn element_addition() {
        unsafe {
            let p = k3_params(2, &[]);
            let mut a: *mut BvElement = ptr::null_mut();
            let mut b: *mut BvElement = ptr::null_mut();
            let sa = c("o(1)");
            let sb = c("-o(1) + tau(1,2)");
            assert_eq!(bv_element_parse(p, sa.as_ptr(), &mut a), BvStatus::Ok);
            assert_eq!(bv_element_parse(p, sb.as_ptr(), &mut b), BvStatus::Ok);
            let mut sum: *mut BvElement = ptr::null_mut();
            assert_eq!(bv_element_add(a, b, &mut sum), BvStatus::Ok);
            let mut text: *mut c_char = ptr::null_mut();
            assert_eq!(bv_element_text(sum, &mut text), BvStatus::Ok);
            assert_eq!(take_string(text), "tau(1,2)");
            bv_element_free(sum);
            bv_element_free(b);
            bv_element_free(a);
            bv_params_free(p);
        }
    }

    #[test]
    fn error_paths_set_status_and_message() {
        unsafe {
            let p = k3_params(2, &[]);
            let mut e: *mut BvElement = ptr::null_mut();

            let bad = c("o(0)");
            assert_eq!(
                bv_element_parse(p, bad.as_ptr(), &mut e),
                BvStatus::ParseError
            );
            let msg = CStr::from_ptr(bv_last_error()).to_str().unwrap();
            assert!(msg.contains("syntax error"), "message: {msg}");

            let out_of_range = c("o(7)");
            assert_eq!(
                bv_element_parse(p, out_of_range.as_ptr(), &mut e),
                BvStatus::EvalError
            );

            assert_eq!(
                bv_element_parse(ptr::null(), bad.as_ptr(), &mut e),
                BvStatus::NullPointer
            );

            let mut q: *mut BvParams = ptr::null_mut();
            let zero = c("0");
            let degs = [zero.as_ptr()];
            assert_eq!(
                bv_params_k3(2, degs.as_ptr(), 1, &mut q),
                BvStatus::InvalidArgument
            );

            bv_params_free(p);
        }
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        unsafe {
            let p2 = k3_params(2, &[]);
            let p3 = k3_params(3, &[]);
            let mut a: *mut BvElement = ptr::null_mut();
            let mut b: *mut BvElement = ptr::null_mut();
            let s = c("o(1)");
            assert_eq!(bv_element_parse(p2, s.as_ptr(), &mut a), BvStatus::Ok);
            assert_eq!(bv_element_parse(p3, s.as_ptr(), &mut b), BvStatus::Ok);
            let mut sum: *mut BvElement = ptr::null_mut();
            assert_eq!(bv_element_add(a, b, &mut sum), BvStatus::InvalidArgument);
            bv_element_free(b);
            bv_element_free(a);
            bv_params_free(p3);
            bv_params_free(p2);
        }
    }

    #[test]
    fn gram_and_verify_reports() {
        unsafe {
            let x = c("3");
            let mut doc: *mut c_char = ptr::null_mut();
            assert_eq!(bv_gram_json(4, x.as_ptr(), 0, &mut doc), BvStatus::Ok);
            assert_eq!(
                take_string(doc),
                r#"{"d":4,"x":3,"dim":3,"matrix":[[9,3,3],[3,9,3],[3,3,9]]}"#
            );

            let mut report: *mut c_char = ptr::null_mut();
            let mut pass = false;
            assert_eq!(
                bv_verify_kernel_generated(4, 1, 0, &mut report, &mut pass),
                BvStatus::Ok
            );
            assert!(pass);
            let body = take_string(report);
            assert!(body.contains(r#"{"kernel_dim":2,"slice_rank":2,"equal":true}"#));

            let mut small: *mut c_char = ptr::null_mut();
            assert_eq!(
                bv_gram_json(4, x.as_ptr(), 2, &mut small),
                BvStatus::ResourceExceeded
            );
        }
    }
}
