use std::ffi::{c_char, CStr, CString};
use std::ptr;

use klevel::oracle::examples::{bilevel_example, buchheim, simple_gadget_base};
use klevel::exactnum::int;
use klevel_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    klv_string_free(s);
    out
}

unsafe fn load(json: &str) -> *mut KlvInstance {
    let mut h = ptr::null_mut();
    assert_eq!(klv_instance_from_json(c(json).as_ptr(), &mut h), KlvStatus::Ok);
    assert!(!h.is_null());
    h
}

#[test]
fn solve_bilevel_example() {
    unsafe {
        let h = load(&klevel::io::instance_to_json(&bilevel_example()));
        let mut r = ptr::null_mut();
        assert_eq!(klv_solve(h, &mut r), KlvStatus::Ok);
        let mut st = KlvSolveStatus::Infeasible;
        assert_eq!(klv_report_status(r, &mut st), KlvStatus::Ok);
        assert_eq!(st, KlvSolveStatus::Finite);
        let mut s = ptr::null_mut();
        assert_eq!(klv_report_to_json(r, &mut s), KlvStatus::Ok);
        let json = take(s);
        assert!(json.contains(r#""value":"-1""#), "{json}");

        let mut yes = false;
        assert_eq!(klv_decide_val(h, c("-1").as_ptr(), &mut yes), KlvStatus::Ok);
        assert!(yes);
        assert_eq!(klv_decide_val(h, c("-3/2").as_ptr(), &mut yes), KlvStatus::Ok);
        assert!(!yes);

        let (mut f, mut o) = (false, false);
        assert_eq!(klv_check_point(h, c("1,1").as_ptr(), &mut f, &mut o), KlvStatus::Ok);
        assert!(f && o);
        assert_eq!(klv_check_point(h, c("0,1").as_ptr(), &mut f, &mut o), KlvStatus::Ok);
        assert!(!f && !o);
        assert_eq!(klv_check_point(h, c("1").as_ptr(), &mut f, &mut o), KlvStatus::Dimension);

        klv_report_free(r);
        klv_instance_free(h);
    }
}

#[test]
fn buchheim_is_infeasible() {
    unsafe {
        let h = load(&klevel::io::instance_to_json(&buchheim()));
        let mut r = ptr::null_mut();
        assert_eq!(klv_solve(h, &mut r), KlvStatus::Ok);
        let mut st = KlvSolveStatus::Finite;
        klv_report_status(r, &mut st);
        assert_eq!(st, KlvSolveStatus::Infeasible);
        klv_report_free(r);
        klv_instance_free(h);
    }
}

#[test]
fn transforms_and_round_trip() {
    unsafe {
        let text = klevel::io::instance_to_json(&simple_gadget_base(int(-1)));
        let h = load(&text);
        let mut s = ptr::null_mut();
        assert_eq!(klv_instance_to_json(h, &mut s), KlvStatus::Ok);
        assert_eq!(take(s), text);

        let mut g = ptr::null_mut();
        assert_eq!(klv_transform(h, KlvTransform::Gadget, ptr::null(), &mut g), KlvStatus::Ok);
        let mut unb = false;
        assert_eq!(klv_decide_unb(g, &mut unb), KlvStatus::Ok);
        assert!(unb);

        let mut sc = ptr::null_mut();
        assert_eq!(
            klv_transform(h, KlvTransform::Scale, c("0").as_ptr(), &mut sc),
            KlvStatus::Precondition
        );
        assert!(sc.is_null());
        let msg = CStr::from_ptr(klv_last_error()).to_str().unwrap();
        assert!(msg.contains("positive"), "{msg}");
        assert_eq!(
            klv_transform(h, KlvTransform::Scale, ptr::null(), &mut sc),
            KlvStatus::NullPointer
        );
        assert_eq!(
            klv_transform(h, KlvTransform::Scale, c("2").as_ptr(), &mut sc),
            KlvStatus::Ok
        );
        klv_instance_free(sc);
        klv_instance_free(g);
        klv_instance_free(h);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(klv_instance_from_json(c("{").as_ptr(), &mut h), KlvStatus::Parse);
        assert!(h.is_null());
        assert!(!klv_last_error().is_null());
        assert_eq!(
            klv_instance_from_json(c(r#"{"k":1,"n":[1],"levels":[{}],"eps":"-1"}"#).as_ptr(), &mut h),
            KlvStatus::InvalidInstance
        );
        assert_eq!(klv_instance_from_json(ptr::null(), &mut h), KlvStatus::NullPointer);
        let mut r = ptr::null_mut();
        assert_eq!(klv_solve(ptr::null(), &mut r), KlvStatus::NullPointer);
        klv_instance_free(ptr::null_mut());
        klv_report_free(ptr::null_mut());
        klv_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/klevel.h")).unwrap();
    for name in [
        "typedef struct KlvInstance KlvInstance;",
        "klv_instance_from_json",
        "klv_solve",
        "klv_decide_val",
        "klv_decide_unb",
        "klv_check_point",
        "klv_transform",
        "klv_last_error",
        "klv_string_free",
        "KlvStatus_Precondition",
    ] {
        assert!(h.contains(name), "{name}");
    }
}
