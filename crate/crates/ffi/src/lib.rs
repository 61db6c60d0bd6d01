//! C ABI over `bour_core`.
//!
//! Every fallible call returns a [`BourStatus`]; on anything but
//! `BOUR_STATUS_OK` the message is available from [`bour_last_error`] on the
//! same thread. Handles are opaque and must be released with their `_free`
//! function. Strings returned through out-pointers are released with
//! [`bour_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bour_core::bour::{pair_report, BourPair, Grid, Surface, Tolerances};
use bour_core::expr::{parse, Env, Expr};
use bour_core::helicoid::HelicoidSpec;
use bour_core::lorentz::{minkowski_dot, wedge, Vec4};
use bour_core::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BourStatus {
    Ok = 0,
    /// A pair was evaluated but at least one verdict disagrees with its
    /// expectation.
    VerdictFailed = 1,
    InvalidInput = 2,
    NumericalFailure = 3,
    NullPointer = 4,
    Panic = 5,
}

/// Parsed profile expression in `u`.
pub struct BourExpr(Expr);

/// Helicoidal (or, at zero pitch, rotational) surface.
pub struct BourHelicoid(HelicoidSpec);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct BourCurvatures {
    pub k: f64,
    pub h1: f64,
    pub h2: f64,
    /// Largest component of the mean curvature vector.
    pub hvec_max: f64,
    /// `EG - F^2` of the induced metric.
    pub w: f64,
    pub minimal: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(e: Error) -> BourStatus {
    let status = if e.exit_code() == 3 { BourStatus::NumericalFailure } else { BourStatus::InvalidInput };
    set_error(e.to_string());
    status
}

fn guard(f: impl FnOnce() -> Result<BourStatus, BourStatus>) -> BourStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) | Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            BourStatus::Panic
        }
    }
}

fn nonnull<T>(p: *const T, name: &str) -> Result<(), BourStatus> {
    if p.is_null() {
        set_error(format!("`{name}` is null"));
        Err(BourStatus::NullPointer)
    } else {
        Ok(())
    }
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, BourStatus> {
    nonnull(p, name)?;
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("`{name}` is not valid UTF-8"));
        BourStatus::InvalidInput
    })
}

unsafe fn read_vec4(p: *const f64) -> Vec4 {
    let s = std::slice::from_raw_parts(p, 4);
    Vec4([s[0], s[1], s[2], s[3]])
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bour_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bour_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `<x, y>` with signature `(+, +, +, -)`; NaN if either pointer is null.
///
/// # Safety
/// `x` and `y` must each point to 4 doubles.
#[no_mangle]
pub unsafe extern "C" fn bour_minkowski_dot(x: *const f64, y: *const f64) -> f64 {
    if x.is_null() || y.is_null() {
        return f64::NAN;
    }
    minkowski_dot(read_vec4(x), read_vec4(y))
}

/// Components of `x ∧ y` in the order 12, 13, 14, 23, 24, 34.
///
/// # Safety
/// `x` and `y` must point to 4 doubles, `out` to 6 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn bour_wedge(x: *const f64, y: *const f64, out: *mut f64) -> BourStatus {
    guard(|| {
        nonnull(x, "x")?;
        nonnull(y, "y")?;
        nonnull(out, "out")?;
        let b = wedge(read_vec4(x), read_vec4(y));
        ptr::copy_nonoverlapping(b.0.as_ptr(), out, 6);
        Ok(BourStatus::Ok)
    })
}

/// # Safety
/// `src` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bour_expr_parse(src: *const c_char, out: *mut *mut BourExpr) -> BourStatus {
    guard(|| {
        nonnull(out, "out")?;
        let e = parse(read_str(src, "src")?).map_err(fail)?;
        *out = Box::into_raw(Box::new(BourExpr(e)));
        Ok(BourStatus::Ok)
    })
}

/// Value and first two derivatives at `u`. Expressions naming constants
/// other than `u` fail here.
///
/// # Safety
/// `e` must be a live handle; `out` must point to 3 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn bour_expr_eval(e: *const BourExpr, u: f64, out: *mut f64) -> BourStatus {
    guard(|| {
        nonnull(e, "e")?;
        nonnull(out, "out")?;
        let j = (*e).0.eval_jet(u, &Env::new()).map_err(fail)?;
        ptr::copy_nonoverlapping([j.v, j.d1, j.d2].as_ptr(), out, 3);
        Ok(BourStatus::Ok)
    })
}

/// # Safety
/// `e` must be null or a handle from [`bour_expr_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bour_expr_free(e: *mut BourExpr) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Builds a surface from the same JSON accepted by `bour report --spec`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bour_helicoid_from_json(json: *const c_char, out: *mut *mut BourHelicoid) -> BourStatus {
    guard(|| {
        nonnull(out, "out")?;
        let s = HelicoidSpec::from_json(read_str(json, "json")?).map_err(fail)?;
        *out = Box::into_raw(Box::new(BourHelicoid(s)));
        Ok(BourStatus::Ok)
    })
}

/// # Safety
/// `h` must be null or a handle from [`bour_helicoid_from_json`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bour_helicoid_free(h: *mut BourHelicoid) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle; `out` must point to 4 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn bour_helicoid_position(h: *const BourHelicoid, u: f64, v: f64, out: *mut f64) -> BourStatus {
    guard(|| {
        nonnull(h, "h")?;
        nonnull(out, "out")?;
        let p = (*h).0.position(u, v).map_err(fail)?;
        ptr::copy_nonoverlapping(p.0.as_ptr(), out, 4);
        Ok(BourStatus::Ok)
    })
}

/// Unit tangent bivector, components ordered as in [`bour_wedge`].
///
/// # Safety
/// `h` must be a live handle; `out` must point to 6 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn bour_helicoid_gauss_map(h: *const BourHelicoid, u: f64, v: f64, out: *mut f64) -> BourStatus {
    guard(|| {
        nonnull(h, "h")?;
        nonnull(out, "out")?;
        let g = (*h).0.gauss(u, v).map_err(fail)?;
        ptr::copy_nonoverlapping(g.0.as_ptr(), out, 6);
        Ok(BourStatus::Ok)
    })
}

/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bour_helicoid_curvatures(
    h: *const BourHelicoid,
    u: f64,
    v: f64,
    out: *mut BourCurvatures,
) -> BourStatus {
    guard(|| {
        nonnull(h, "h")?;
        nonnull(out, "out")?;
        let r = (*h).0.curvatures(u, v).map_err(fail)?;
        *out = BourCurvatures { k: r.k, h1: r.h1, h2: r.h2, hvec_max: r.hvec.max_abs(), w: r.form.w, minimal: r.minimal };
        Ok(BourStatus::Ok)
    })
}

/// Runs the pair check for a pair file (`{"helicoid": .., "gauge": ..}`) on an
/// `nu × nv` grid with default tolerances. The JSON report is written to
/// `report` whenever the pair could be evaluated, including when a verdict
/// fails (`BOUR_STATUS_VERDICT_FAILED`).
///
/// # Safety
/// `json` must be a NUL-terminated string and `report` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bour_verify_pair_json(
    json: *const c_char,
    nu: usize,
    nv: usize,
    report: *mut *mut c_char,
) -> BourStatus {
    guard(|| {
        nonnull(report, "report")?;
        *report = ptr::null_mut();
        if nu < 2 || nv < 2 {
            set_error(format!("grid must be at least 2x2, got {nu}x{nv}"));
            return Err(BourStatus::InvalidInput);
        }
        let pair = BourPair::from_json(read_str(json, "json")?).map_err(fail)?;
        let grid = Grid::for_spec(&pair.helicoid, nu, nv);
        let rep = pair_report(&pair, &grid, &Tolerances::default()).map_err(fail)?;
        let text = serde_json::to_string(&rep).map_err(|e| fail(e.into()))?;
        *report = CString::new(text).map_err(|_| BourStatus::Panic)?.into_raw();
        if rep.pass {
            Ok(BourStatus::Ok)
        } else {
            set_error("pair evaluated but a verdict disagrees with its expectation".into());
            Ok(BourStatus::VerdictFailed)
        }
    })
}
