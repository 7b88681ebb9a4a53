//! C interface to quivercalc.
//!
//! Objects cross the boundary as opaque handles created by `*_from_json`
//! and released by the matching `*_free`. Every fallible call returns a
//! [`QcStatus`]; on failure the message is available from
//! [`qc_last_error`] on the same thread. Strings returned through `out`
//! parameters are owned by the caller and released with [`qc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use quivercalc::io::{any_rep_to_json, parse_quiver, parse_rep, parse_root, quiver_to_json, rep_to_json, root_to_json};
use quivercalc::linalg::{Field, FieldTag, PrimeField, Rationals};
use quivercalc::quiver::QuiverSpec;
use quivercalc::rep::{decompose_with_seed, is_isomorphic, AnyRepresentation, Representation};
use quivercalc::roots::{
    enumerate_positive_roots, indecomposable_from_root, is_positive_definite, tits_form_limit, RootVector,
};
use quivercalc::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QcStatus {
    Ok = 0,
    /// Well-formed input on which the operation is undefined.
    DomainError = 1,
    /// Malformed or inconsistent input.
    InputError = 2,
    NullArgument = 3,
    InvalidUtf8 = 4,
    /// A bug inside the library; the handle arguments are left untouched.
    Panic = 5,
}

/// A validated quiver.
pub struct QcQuiver(Arc<QuiverSpec>);

/// A representation over Q or a prime field.
pub struct QcRep(AnyRepresentation);

/// An element of the root space of a quiver.
pub struct QcRoot(RootVector);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Fail {
    Lib(Error),
    Null,
    Utf8,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QcStatus::Ok,
        Ok(Err(Fail::Lib(e))) => {
            set_error(format!("{}: {e}", e.code()));
            if e.is_input_error() {
                QcStatus::InputError
            } else {
                QcStatus::DomainError
            }
        }
        Ok(Err(Fail::Null)) => {
            set_error("null argument".into());
            QcStatus::NullArgument
        }
        Ok(Err(Fail::Utf8)) => {
            set_error("argument is not valid UTF-8".into());
            QcStatus::InvalidUtf8
        }
        Err(_) => {
            set_error("internal panic".into());
            QcStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail::Null);
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail::Utf8)
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null)
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null);
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail::Utf8)?;
    put(out, c.into_raw())
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library.
#[no_mangle]
pub extern "C" fn qc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn qc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `json` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qc_quiver_from_json(json: *const c_char, out: *mut *mut QcQuiver) -> QcStatus {
    guard(|| {
        let spec = parse_quiver(text(json)?)?;
        put(out, boxed(QcQuiver(Arc::new(spec))))
    })
}

/// # Safety
/// `q` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qc_quiver_to_json(q: *const QcQuiver, out: *mut *mut c_char) -> QcStatus {
    guard(|| put_string(out, quiver_to_json(&handle(q)?.0).to_string()))
}

/// # Safety
/// `q` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qc_quiver_free(q: *mut QcQuiver) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// # Safety
/// `q` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qc_quiver_is_positive_definite(q: *const QcQuiver, out: *mut bool) -> QcStatus {
    guard(|| put(out, is_positive_definite(&handle(q)?.0).positive_definite))
}

/// Positive roots seen by the window of ray depth `depth`, as a JSON array
/// of root documents.
///
/// # Safety
/// `q` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qc_quiver_roots(q: *const QcQuiver, depth: usize, out: *mut *mut c_char) -> QcStatus {
    guard(|| {
        let roots = enumerate_positive_roots(&handle(q)?.0, depth)?;
        let docs: Vec<serde_json::Value> = roots.iter().map(root_to_json).collect();
        put_string(out, serde_json::Value::Array(docs).to_string())
    })
}

/// # Safety
/// `q` must be a live handle, `json` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qc_root_from_json(q: *const QcQuiver, json: *const c_char, out: *mut *mut QcRoot) -> QcStatus {
    guard(|| {
        let n = parse_root(&handle(q)?.0, text(json)?)?;
        put(out, boxed(QcRoot(n)))
    })
}

/// # Safety
/// `n` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qc_root_to_json(n: *const QcRoot, out: *mut *mut c_char) -> QcStatus {
    guard(|| put_string(out, root_to_json(&handle(n)?.0).to_string()))
}

/// # Safety
/// `n` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qc_root_free(n: *mut QcRoot) {
    if !n.is_null() {
        drop(Box::from_raw(n));
    }
}

/// Limit of the Tits form as text: an integer, `+inf`, `-inf` or `divergent`.
///
/// # Safety
/// `n` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qc_root_tits_limit(n: *const QcRoot, out: *mut *mut c_char) -> QcStatus {
    guard(|| put_string(out, tits_form_limit(&handle(n)?.0).to_string()))
}

/// The indecomposable with dimension vector `n` over `field` (`"Q"` or
/// `"F<p>"`).
///
/// # Safety
/// `n` must be a live handle, `field` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qc_indecomposable_from_root(
    n: *const QcRoot,
    field: *const c_char,
    out: *mut *mut QcRep,
) -> QcStatus {
    guard(|| {
        let n = &handle(n)?.0;
        let rep: AnyRepresentation = match text(field)?.parse::<FieldTag>()? {
            FieldTag::Rational => indecomposable_from_root(&Rationals, n)?.into(),
            FieldTag::Prime(p) => indecomposable_from_root(&PrimeField::new(p)?, n)?.into(),
        };
        put(out, boxed(QcRep(rep)))
    })
}

/// Parse a representation document. A quiver given as a path is resolved
/// against the working directory.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qc_rep_from_json(json: *const c_char, out: *mut *mut QcRep) -> QcStatus {
    guard(|| {
        let rep = parse_rep(text(json)?, None)?;
        put(out, boxed(QcRep(rep)))
    })
}

/// # Safety
/// `v` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qc_rep_to_json(v: *const QcRep, out: *mut *mut c_char) -> QcStatus {
    guard(|| put_string(out, any_rep_to_json(&handle(v)?.0).to_string()))
}

/// # Safety
/// `v` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qc_rep_free(v: *mut QcRep) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Krull-Schmidt decomposition as JSON: `{"certificate", "summands"}`.
///
/// # Safety
/// `v` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qc_rep_decompose(v: *const QcRep, seed: u64, out: *mut *mut c_char) -> QcStatus {
    guard(|| {
        let doc = match &handle(v)?.0 {
            AnyRepresentation::Rational(r) => decomposition_json(r, seed),
            AnyRepresentation::Prime(r) => decomposition_json(r, seed),
        };
        put_string(out, doc.to_string())
    })
}

fn decomposition_json<K: Field>(r: &Representation<K>, seed: u64) -> serde_json::Value {
    let d = decompose_with_seed(r, seed);
    let summands: Vec<serde_json::Value> = d.summands.iter().map(rep_to_json).collect();
    serde_json::json!({"certificate": d.certificate, "summands": summands})
}

/// # Safety
/// `a` and `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qc_rep_is_isomorphic(a: *const QcRep, b: *const QcRep, out: *mut bool) -> QcStatus {
    guard(|| {
        let same = match (&handle(a)?.0, &handle(b)?.0) {
            (AnyRepresentation::Rational(x), AnyRepresentation::Rational(y)) => is_isomorphic(x, y)?,
            (AnyRepresentation::Prime(x), AnyRepresentation::Prime(y)) => is_isomorphic(x, y)?,
            (x, y) => return Err(Error::FieldMismatch { left: x.field_tag(), right: y.field_tag() }.into()),
        };
        put(out, same)
    })
}
