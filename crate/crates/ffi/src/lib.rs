//! C ABI for the klevel toolkit.
//!
//! Instances and reports are opaque handles created and released by this library. Every
//! fallible call returns a [`KlvStatus`]; on failure the message is available from
//! [`klv_last_error`] until the next failing call on the same thread. Strings returned
//! through `char **` outputs must be released with [`klv_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use klevel::exactnum::{parse_rational, parse_rational_list};
use klevel::mlp::{self, Analysis};
use klevel::transforms::{forward_constraints, scale_rhs, unboundedness_gadget};
use klevel::{Error, MlpInstance, SolveReport, Status};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KlvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Dimension = 4,
    InvalidInstance = 5,
    Precondition = 6,
    Io = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KlvSolveStatus {
    Infeasible = 0,
    Unbounded = 1,
    Finite = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KlvTransform {
    Scale = 0,
    Forward = 1,
    Gadget = 2,
}

/// Opaque k-level instance.
pub struct KlvInstance {
    inner: MlpInstance,
}

/// Opaque solve result.
pub struct KlvReport {
    inner: SolveReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: KlvStatus, msg: impl Into<String>) -> KlvStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> KlvStatus {
    let status = match e {
        Error::ParseRational(_) | Error::Json(_) => KlvStatus::Parse,
        Error::Dimension { .. } => KlvStatus::Dimension,
        Error::InvalidInstance(_) => KlvStatus::InvalidInstance,
        Error::Precondition(_) => KlvStatus::Precondition,
        Error::Io(_) => KlvStatus::Io,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning panics into [`KlvStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<(), KlvStatus>) -> KlvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KlvStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(KlvStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, KlvStatus> {
    if s.is_null() {
        return Err(fail(KlvStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(KlvStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, KlvStatus> {
    p.as_ref()
        .ok_or_else(|| fail(KlvStatus::NullPointer, "null handle"))
}

fn out_check<T>(p: *mut T) -> Result<(), KlvStatus> {
    if p.is_null() {
        Err(fail(KlvStatus::NullPointer, "null output pointer"))
    } else {
        Ok(())
    }
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no NUL").into_raw()
}

/// Message of the last failed call on this thread, or NULL. Owned by the library.
#[no_mangle]
pub extern "C" fn klv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn klv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an instance document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn klv_instance_from_json(
    json: *const c_char,
    out: *mut *mut KlvInstance,
) -> KlvStatus {
    guard(|| {
        out_check(out)?;
        let inst = klevel::io::instance_from_json(read_str(json)?).map_err(from_error)?;
        *out = Box::into_raw(Box::new(KlvInstance { inner: inst }));
        Ok(())
    })
}

/// Canonical JSON of an instance.
///
/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn klv_instance_to_json(
    inst: *const KlvInstance,
    out: *mut *mut c_char,
) -> KlvStatus {
    guard(|| {
        out_check(out)?;
        let inst = deref(inst)?;
        *out = to_c_string(klevel::io::instance_to_json(&inst.inner));
        Ok(())
    })
}

/// # Safety
/// `inst` must be NULL or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn klv_instance_free(inst: *mut KlvInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn klv_solve(inst: *const KlvInstance, out: *mut *mut KlvReport) -> KlvStatus {
    guard(|| {
        out_check(out)?;
        let inst = deref(inst)?;
        let report = mlp::solve(&inst.inner);
        *out = Box::into_raw(Box::new(KlvReport { inner: report }));
        Ok(())
    })
}

/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn klv_report_status(
    report: *const KlvReport,
    out: *mut KlvSolveStatus,
) -> KlvStatus {
    guard(|| {
        out_check(out)?;
        *out = match deref(report)?.inner.status {
            Status::Infeasible => KlvSolveStatus::Infeasible,
            Status::Unbounded => KlvSolveStatus::Unbounded,
            Status::Finite => KlvSolveStatus::Finite,
        };
        Ok(())
    })
}

/// Report as JSON, with the value as `"p/q"`, `"+inf"` or `"-inf"`.
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn klv_report_to_json(
    report: *const KlvReport,
    out: *mut *mut c_char,
) -> KlvStatus {
    guard(|| {
        out_check(out)?;
        let report = deref(report)?;
        let s = serde_json::to_string(&report.inner).expect("reports serialize");
        *out = to_c_string(s);
        Ok(())
    })
}

/// # Safety
/// `report` must be NULL or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn klv_report_free(report: *mut KlvReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Whether a feasible point has leader objective at most `t` (a `"p/q"` string).
///
/// # Safety
/// `inst` must be a live handle, `t` a NUL-terminated string, `answer` writable.
#[no_mangle]
pub unsafe extern "C" fn klv_decide_val(
    inst: *const KlvInstance,
    t: *const c_char,
    answer: *mut bool,
) -> KlvStatus {
    guard(|| {
        out_check(answer)?;
        let inst = deref(inst)?;
        let t = parse_rational(read_str(t)?).map_err(from_error)?;
        *answer = mlp::decide_val(&inst.inner, &t);
        Ok(())
    })
}

/// # Safety
/// `inst` must be a live handle and `answer` writable.
#[no_mangle]
pub unsafe extern "C" fn klv_decide_unb(inst: *const KlvInstance, answer: *mut bool) -> KlvStatus {
    guard(|| {
        out_check(answer)?;
        *answer = mlp::decide_unbounded(&deref(inst)?.inner);
        Ok(())
    })
}

/// Feasibility and optimality of a point given as comma-separated rationals.
///
/// # Safety
/// `inst` must be a live handle, `point` a NUL-terminated string, the outputs writable.
#[no_mangle]
pub unsafe extern "C" fn klv_check_point(
    inst: *const KlvInstance,
    point: *const c_char,
    feasible: *mut bool,
    optimal: *mut bool,
) -> KlvStatus {
    guard(|| {
        out_check(feasible)?;
        out_check(optimal)?;
        let inst = deref(inst)?;
        let x = parse_rational_list(read_str(point)?).map_err(from_error)?;
        let a = Analysis::new(&inst.inner);
        *feasible = a.check_feasible_point(&x).map_err(from_error)?;
        *optimal = a.check_optimal_point(&x).map_err(from_error)?;
        Ok(())
    })
}

/// Applies a transformation. `lambda` is required for [`KlvTransform::Scale`] and ignored
/// otherwise.
///
/// # Safety
/// `inst` must be a live handle, `lambda` NULL or a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn klv_transform(
    inst: *const KlvInstance,
    op: KlvTransform,
    lambda: *const c_char,
    out: *mut *mut KlvInstance,
) -> KlvStatus {
    guard(|| {
        out_check(out)?;
        let inst = &deref(inst)?.inner;
        let result = match op {
            KlvTransform::Scale => {
                let l = parse_rational(read_str(lambda)?).map_err(from_error)?;
                scale_rhs(inst, &l).map_err(from_error)?
            }
            KlvTransform::Forward => forward_constraints(inst).instance,
            KlvTransform::Gadget => unboundedness_gadget(inst).map_err(from_error)?,
        };
        *out = Box::into_raw(Box::new(KlvInstance { inner: result }));
        Ok(())
    })
}
