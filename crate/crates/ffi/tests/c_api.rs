use std::ffi::{CStr, CString};
use std::ptr;

use quivercalc_ffi::*;

const D4: &str = r#"{"name":"D4","vertices":["c","x","y","z"],"arrows":[["a","x","c"],["b","c","y"],["d","z","c"]]}"#;

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { qc_string_free(s) };
    out
}

#[test]
fn quiver_roots_and_indecomposables() {
    let json = CString::new(D4).unwrap();
    let mut q = ptr::null_mut();
    assert_eq!(unsafe { qc_quiver_from_json(json.as_ptr(), &mut q) }, QcStatus::Ok);
    let mut pd = false;
    assert_eq!(unsafe { qc_quiver_is_positive_definite(q, &mut pd) }, QcStatus::Ok);
    assert!(pd);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { qc_quiver_roots(q, 0, &mut s) }, QcStatus::Ok);
    let roots: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(roots.as_array().unwrap().len(), 12);

    let root = CString::new(r#"{"values":{"c":2,"x":1,"y":1,"z":1}}"#).unwrap();
    let mut n = ptr::null_mut();
    assert_eq!(unsafe { qc_root_from_json(q, root.as_ptr(), &mut n) }, QcStatus::Ok);
    assert_eq!(unsafe { qc_root_tits_limit(n, &mut s) }, QcStatus::Ok);
    assert_eq!(take(s), "1");
    let field = CString::new("F3").unwrap();
    let mut v = ptr::null_mut();
    assert_eq!(unsafe { qc_indecomposable_from_root(n, field.as_ptr(), &mut v) }, QcStatus::Ok);
    assert_eq!(unsafe { qc_rep_decompose(v, 0, &mut s) }, QcStatus::Ok);
    let d: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(d["summands"].as_array().unwrap().len(), 1);
    assert_eq!(d["certificate"], "exhaustive");

    assert_eq!(unsafe { qc_rep_to_json(v, &mut s) }, QcStatus::Ok);
    let text = CString::new(take(s)).unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { qc_rep_from_json(text.as_ptr(), &mut w) }, QcStatus::Ok);
    let mut same = false;
    assert_eq!(unsafe { qc_rep_is_isomorphic(v, w, &mut same) }, QcStatus::Ok);
    assert!(same);
    unsafe {
        qc_rep_free(v);
        qc_rep_free(w);
        qc_root_free(n);
        qc_quiver_free(q);
    }
}

#[test]
fn errors_are_reported() {
    let bad = CString::new(r#"{"name":"A","vertices":["0","0"]}"#).unwrap();
    let mut q = ptr::null_mut();
    assert_eq!(unsafe { qc_quiver_from_json(bad.as_ptr(), &mut q) }, QcStatus::InputError);
    assert!(q.is_null());
    let msg = unsafe { CStr::from_ptr(qc_last_error()) }.to_str().unwrap();
    assert!(msg.starts_with("duplicate-id"));
    assert_eq!(unsafe { qc_quiver_from_json(ptr::null(), &mut q) }, QcStatus::NullArgument);

    let cycle =
        CString::new(r#"{"name":"C","vertices":["p","q","r"],"arrows":[["a","p","q"],["b","q","r"],["c","r","p"]]}"#)
            .unwrap();
    assert_eq!(unsafe { qc_quiver_from_json(cycle.as_ptr(), &mut q) }, QcStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { qc_quiver_roots(q, 0, &mut s) }, QcStatus::DomainError);
    assert!(unsafe { CStr::from_ptr(qc_last_error()) }.to_str().unwrap().starts_with("not-positive-definite"));
    // success clears the message
    let mut pd = true;
    assert_eq!(unsafe { qc_quiver_is_positive_definite(q, &mut pd) }, QcStatus::Ok);
    assert!(!pd);
    assert!(qc_last_error().is_null());
    unsafe { qc_quiver_free(q) };
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/quivercalc.h")).unwrap();
    for name in ["QcStatus", "QcQuiver", "qc_quiver_from_json", "qc_rep_decompose", "qc_string_free", "qc_last_error"] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
