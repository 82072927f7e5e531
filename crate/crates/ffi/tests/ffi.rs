use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::path::Path;
use std::process::Command;
use std::ptr;

use steenrod_ffi::*;

const ELEMENT: &str = r#"{"p":2,"k":2,"flavor":"base",
  "presentation":{"p":2,"generators":[{"name":"a","degree":1,"cap":2},{"name":"b","degree":3,"cap":2}]},
  "coeffs":[[{"coeff":1,"exponents":[0,0]}],[{"coeff":1,"exponents":[1,0]}],[{"coeff":1,"exponents":[0,1]}]]}"#;

fn parse(text: &str) -> *mut StElement {
    let json = CString::new(text).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { st_element_from_json(json.as_ptr(), &mut h) }, StStatus::Ok);
    assert!(!h.is_null());
    h
}

fn take_string(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { st_string_free(s) };
    out
}

fn last_error() -> String {
    let p = st_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn round_trip_and_group_operations() {
    let a = parse(ELEMENT);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { st_element_to_json(a, &mut text) }, StStatus::Ok);
    let b = parse(&take_string(text));
    let mut same = false;
    assert_eq!(unsafe { st_element_equal(a, b, &mut same) }, StStatus::Ok);
    assert!(same);

    let (mut closed, mut rec, mut prod) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(st_invert(a, ST_INVERT_CLOSED, &mut closed), StStatus::Ok);
        assert_eq!(st_invert(a, ST_INVERT_RECURSIVE, &mut rec), StStatus::Ok);
        assert_eq!(st_element_equal(closed, rec, &mut same), StStatus::Ok);
        assert!(same);
        assert_eq!(st_compose(a, closed, &mut prod), StStatus::Ok);
        let mut id = false;
        assert_eq!(st_is_identity(prod, &mut id), StStatus::Ok);
        assert!(id);
        let mut level = 0;
        assert_eq!(st_filtration(prod, &mut level), StStatus::Ok);
        assert_eq!(level, ST_FILTRATION_TOP);
        assert_eq!(st_filtration(a, &mut level), StStatus::Ok);
        assert_eq!(level, 0);

        let mut c = ptr::null_mut();
        assert_eq!(st_commutator(a, b, &mut c), StStatus::Ok);
        assert_eq!(st_is_identity(c, &mut id), StStatus::Ok);
        assert!(id);
        let mut r = ptr::null_mut();
        assert_eq!(st_rho(a, &mut r), StStatus::Ok);
        let mut shown = ptr::null_mut();
        assert_eq!(st_element_display(r, &mut shown), StStatus::Ok);
        assert!(take_string(shown).contains("level1"));
        for h in [a, b, closed, rec, prod, c, r] {
            st_element_free(h);
        }
    }
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("{\"p\":").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { st_element_from_json(bad.as_ptr(), &mut h) }, StStatus::Parse);
    assert!(h.is_null());
    assert!(!last_error().is_empty());

    assert_eq!(unsafe { st_element_from_json(ptr::null(), &mut h) }, StStatus::NullPointer);
    let a = parse(ELEMENT);
    unsafe {
        assert_eq!(st_invert(a, ST_INVERT_SPLIT, &mut h), StStatus::Invalid);
        assert!(last_error().contains("odd prime"));
        assert_eq!(st_invert(a, 17, &mut h), StStatus::Invalid);
        assert_eq!(st_compose(a, ptr::null(), &mut h), StStatus::NullPointer);
        st_element_free(a);
        st_element_free(ptr::null_mut());
        st_string_free(ptr::null_mut());
    }
}

#[test]
fn milnor_queries() {
    let r = [2u32];
    let mut out = false;
    unsafe {
        assert_eq!(st_milnor_query(2, 0, ptr::null(), 0, r.as_ptr(), 1, false, &mut out), StStatus::Ok);
        assert!(out);
        assert_eq!(st_milnor_query(2, 0, ptr::null(), 0, r.as_ptr(), 1, true, &mut out), StStatus::Ok);
        assert!(!out);
        let e = [1u32];
        assert_eq!(st_milnor_query(3, 0, e.as_ptr(), 1, ptr::null(), 0, false, &mut out), StStatus::Ok);
        assert!(out);
        assert_eq!(st_milnor_query(4, 0, ptr::null(), 0, ptr::null(), 0, false, &mut out), StStatus::Invalid);
        let two = [2u32];
        assert_eq!(st_milnor_query(3, 0, two.as_ptr(), 1, ptr::null(), 0, false, &mut out), StStatus::Parse);
    }
}

#[test]
fn verify_report() {
    let mut report = ptr::null_mut();
    let mut ok = false;
    assert_eq!(unsafe { st_verify(2, 2, 1, 5, &mut report, &mut ok) }, StStatus::Ok);
    assert!(ok);
    let text = take_string(report);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["config"]["seed"], 1);
    assert!(!unsafe { CStr::from_ptr(st_version()) }.to_bytes().is_empty());
}

#[test]
fn header_compiles() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/steenrod.h");
    assert!(header.exists());
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(&header)
        .status()
    else {
        eprintln!("no C compiler; skipping the header syntax check");
        return;
    };
    assert!(status.success());
}
