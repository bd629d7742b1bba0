//! C interface to `coxeter-perp`.
//!
//! Matrices are opaque handles created by [`cox_matrix_parse`] and released
//! with [`cox_matrix_free`]. Every fallible call returns a [`CoxStatus`];
//! on failure [`cox_last_error`] describes the problem. Strings handed out
//! by the library are released with [`cox_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use coxeter_perp::cli::{decide_report, generators_report, oracle_report};
use coxeter_perp::decide::{corollary_check, decide, Decision};
use coxeter_perp::oracle::canonical_generators;
use coxeter_perp::perp::{enumerate_generators, Limits};
use coxeter_perp::{CoxeterMatrix, Error, Gen};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownGenerator = 4,
    NotSaturated = 5,
    Inconsistency = 6,
    InvalidArgument = 7,
    Panic = 8,
}

/// Opaque Coxeter matrix.
pub struct CoxMatrix {
    inner: CoxeterMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(err: &Error) -> CoxStatus {
    match err {
        Error::Parse { .. } => CoxStatus::Parse,
        Error::UnknownGenerator(_) => CoxStatus::UnknownGenerator,
        Error::NotSaturated(_) => CoxStatus::NotSaturated,
        Error::Inconsistency(_) => CoxStatus::Inconsistency,
        _ => CoxStatus::InvalidArgument,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (CoxStatus, String)>) -> CoxStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CoxStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CoxStatus::Panic
        }
    }
}

fn lib(err: Error) -> (CoxStatus, String) {
    (status_of(&err), err.to_string())
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (CoxStatus, String)> {
    if p.is_null() {
        return Err((CoxStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (CoxStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn matrix_arg<'a>(m: *const CoxMatrix) -> Result<&'a CoxeterMatrix, (CoxStatus, String)> {
    m.as_ref()
        .map(|m| &m.inner)
        .ok_or((CoxStatus::NullPointer, "matrix is null".into()))
}

unsafe fn generator_arg(cm: &CoxeterMatrix, x: *const c_char) -> Result<Gen, (CoxStatus, String)> {
    cm.index_of(str_arg(x, "generator")?).map_err(lib)
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (CoxStatus, String)> {
    if out.is_null() {
        return Err((CoxStatus::NullPointer, "output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|_| (CoxStatus::InvalidArgument, "output contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Parses a matrix in the text format. On success `*out` owns a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cox_matrix_parse(text: *const c_char, out: *mut *mut CoxMatrix) -> CoxStatus {
    guard(|| {
        if out.is_null() {
            return Err((CoxStatus::NullPointer, "output pointer is null".into()));
        }
        *out = ptr::null_mut();
        let cm = coxeter_perp::format::parse(str_arg(text, "text")?).map_err(lib)?;
        *out = Box::into_raw(Box::new(CoxMatrix { inner: cm }));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `m` must come from [`cox_matrix_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cox_matrix_free(m: *mut CoxMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of generators.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cox_matrix_rank(m: *const CoxMatrix, out: *mut usize) -> CoxStatus {
    guard(|| {
        let cm = matrix_arg(m)?;
        if out.is_null() {
            return Err((CoxStatus::NullPointer, "output pointer is null".into()));
        }
        *out = cm.rank();
        Ok(())
    })
}

/// Sets `*finite` to 1 when the centralizer subgroup of `x` is finitely
/// generated and to 0 otherwise.
///
/// # Safety
/// `m` must be a live handle, `x` a NUL-terminated string, `finite` valid.
#[no_mangle]
pub unsafe extern "C" fn cox_decide(m: *const CoxMatrix, x: *const c_char, finite: *mut c_int) -> CoxStatus {
    guard(|| {
        let cm = matrix_arg(m)?;
        let x = generator_arg(cm, x)?;
        if finite.is_null() {
            return Err((CoxStatus::NullPointer, "output pointer is null".into()));
        }
        let v = decide(cm, x).map_err(lib)?;
        *finite = c_int::from(v.decision == Decision::Finite);
        Ok(())
    })
}

/// Verdict as JSON, including the corollary checks.
///
/// # Safety
/// `m` must be a live handle, `x` a NUL-terminated string, `out` valid.
/// Free `*out` with [`cox_string_free`].
#[no_mangle]
pub unsafe extern "C" fn cox_decide_json(m: *const CoxMatrix, x: *const c_char, out: *mut *mut c_char) -> CoxStatus {
    guard(|| {
        let cm = matrix_arg(m)?;
        let x = generator_arg(cm, x)?;
        let v = decide(cm, x).map_err(lib)?;
        let cors = corollary_check(cm, x, &v).map_err(lib)?;
        write_string(out, decide_report(cm, &v, &cors, None).to_string())
    })
}

/// Canonical generators as JSON. Zero limits select the defaults.
///
/// # Safety
/// As for [`cox_decide_json`].
#[no_mangle]
pub unsafe extern "C" fn cox_generators_json(
    m: *const CoxMatrix,
    x: *const c_char,
    max_path_len: usize,
    max_states: usize,
    out: *mut *mut c_char,
) -> CoxStatus {
    guard(|| {
        let cm = matrix_arg(m)?;
        let x = generator_arg(cm, x)?;
        let mut limits = Limits::default();
        if max_path_len > 0 {
            limits.max_path_len = max_path_len;
        }
        if max_states > 0 {
            limits.max_states = max_states;
        }
        let g = enumerate_generators(cm, x, limits).map_err(lib)?;
        write_string(out, generators_report(cm, x, &g).to_string())
    })
}

/// Canonical roots from brute-force root enumeration up to `depth`.
///
/// # Safety
/// As for [`cox_decide_json`].
#[no_mangle]
pub unsafe extern "C" fn cox_oracle_json(
    m: *const CoxMatrix,
    x: *const c_char,
    depth: usize,
    out: *mut *mut c_char,
) -> CoxStatus {
    guard(|| {
        let cm = matrix_arg(m)?;
        let x = generator_arg(cm, x)?;
        let o = canonical_generators(cm, x, depth).map_err(lib)?;
        write_string(out, oracle_report(cm, x, &o).to_string())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cox_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn cox_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
