use std::ffi::{c_char, c_int, CStr, CString};
use std::process::Command;
use std::ptr;

use coxeter_perp_ffi::*;

const G4: &str = "gens a b c d\nm a b 3\nm b c 3\nm a c 3\nm b d inf\nm c d inf\n";

fn parse(text: &str) -> *mut CoxMatrix {
    let text = CString::new(text).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { cox_matrix_parse(text.as_ptr(), &mut m) }, CoxStatus::Ok);
    assert!(!m.is_null());
    m
}

fn take(s: *mut c_char) -> serde_json::Value {
    let v = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    unsafe { cox_string_free(s) };
    v
}

fn last_error() -> String {
    let p = cox_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn decide_through_handle() {
    let m = parse(G4);
    let mut rank = 0;
    assert_eq!(unsafe { cox_matrix_rank(m, &mut rank) }, CoxStatus::Ok);
    assert_eq!(rank, 4);

    let a = CString::new("a").unwrap();
    let mut finite: c_int = -1;
    assert_eq!(unsafe { cox_decide(m, a.as_ptr(), &mut finite) }, CoxStatus::Ok);
    assert_eq!(finite, 0);
    assert!(cox_last_error().is_null());

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cox_decide_json(m, a.as_ptr(), &mut s) }, CoxStatus::Ok);
    let v = take(s);
    assert_eq!(v["decision"], "infinite");
    assert_eq!(v["violation"]["condition"], 4);
    unsafe { cox_matrix_free(m) };
}

#[test]
fn generators_and_oracle() {
    let m = parse("gens s t\nm s t 4\n");
    let s_name = CString::new("s").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { cox_generators_json(m, s_name.as_ptr(), 0, 0, &mut out) },
        CoxStatus::Ok
    );
    let v = take(out);
    assert_eq!(v["count"], 1);
    assert_eq!(v["saturated"], true);

    assert_eq!(
        unsafe { cox_oracle_json(m, s_name.as_ptr(), 6, &mut out) },
        CoxStatus::Ok
    );
    let o = take(out);
    assert_eq!(o["count"], 1);
    let a: Vec<f64> = serde_json::from_value(o["roots"][0].clone()).unwrap();
    let b: Vec<f64> = serde_json::from_value(v["generators"][0]["root"].clone()).unwrap();
    assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-9));
    unsafe { cox_matrix_free(m) };
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("gens a b\nm a b 1\n").unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { cox_matrix_parse(bad.as_ptr(), &mut m) }, CoxStatus::Parse);
    assert!(m.is_null());
    assert!(last_error().contains("line 2"));

    assert_eq!(unsafe { cox_matrix_parse(ptr::null(), &mut m) }, CoxStatus::NullPointer);

    let m = parse(G4);
    let q = CString::new("q").unwrap();
    let mut finite = 0;
    assert_eq!(
        unsafe { cox_decide(m, q.as_ptr(), &mut finite) },
        CoxStatus::UnknownGenerator
    );
    assert_eq!(
        unsafe { cox_decide(ptr::null(), q.as_ptr(), &mut finite) },
        CoxStatus::NullPointer
    );

    let a = CString::new("a").unwrap();
    let mut out = ptr::null_mut();
    // the G4 orbit never closes up
    assert_eq!(
        unsafe { cox_generators_json(m, a.as_ptr(), 6, 0, &mut out) },
        CoxStatus::Ok
    );
    assert_eq!(take(out)["saturated"], false);
    unsafe {
        cox_matrix_free(m);
        cox_matrix_free(ptr::null_mut());
        cox_string_free(ptr::null_mut());
    }
}

#[test]
fn header_compiles() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/coxeter_perp.h");
    let Ok(out) = Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", "-Wall", "-Werror", header])
        .output()
    else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
