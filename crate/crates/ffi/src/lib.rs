//! C ABI over the dtoric kernel.
//!
//! The context is an opaque handle built from a row-major integer matrix.
//! Every function returns a status code; string results are heap-allocated,
//! returned through out-pointers, and released with `dtoric_string_free`.
//! The last error message is kept per thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_bigint::BigInt;

use dtoric::classify::Classifier;
use dtoric::cone::build_toric;
use dtoric::error::Error;
use dtoric::matrix::IntMatrix;
use dtoric::prim::{
    check_c2, default_c2_bound, enumerate_prim, is_simple, rpos_nonempty, SimplicityVerdict,
};
use dtoric::rat::parse_rat_vec;
use dtoric::report;
use dtoric::semigroup::{Engine, Window};

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DtoricStatus {
    Ok = 0,
    InternalError = 1,
    InvalidInput = 2,
    NullPointer = 3,
    LimitExceeded = 4,
}

/// Opaque analysis context.
pub struct DtoricContext {
    engine: Engine,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DtoricStatus {
    match e {
        Error::LimitExceeded(_) => DtoricStatus::LimitExceeded,
        _ => DtoricStatus::InvalidInput,
    }
}

fn guard<F: FnOnce() -> DtoricStatus>(f: F) -> DtoricStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic".into());
            DtoricStatus::InternalError
        }
    }
}

/// Last error message for this thread, or NULL. Valid until the next failing
/// call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn dtoric_last_error() -> *const c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(c) => c.as_ptr(),
        None => ptr::null(),
    })
}

/// Build a context from a row-major `rows x cols` integer matrix whose
/// columns generate the full integer lattice and span a pointed cone.
///
/// # Safety
/// `entries` must point to `rows * cols` readable values and `out` must be a
/// valid pointer; the returned context must be released with
/// `dtoric_context_free`.
#[no_mangle]
pub unsafe extern "C" fn dtoric_context_new(
    entries: *const i64,
    rows: usize,
    cols: usize,
    out: *mut *mut DtoricContext,
) -> DtoricStatus {
    if entries.is_null() || out.is_null() {
        set_error("null pointer".into());
        return DtoricStatus::NullPointer;
    }
    let slice = std::slice::from_raw_parts(entries, rows * cols);
    guard(|| {
        let m = IntMatrix::from_i64(rows, cols, slice);
        match build_toric(m).and_then(Engine::new) {
            Ok(engine) => {
                let ctx = Box::new(DtoricContext { engine });
                unsafe { *out = Box::into_raw(ctx) };
                DtoricStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Release a context created by `dtoric_context_new`.
///
/// # Safety
/// `ctx` must be a pointer previously returned by `dtoric_context_new` and
/// not yet freed; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn dtoric_context_free(ctx: *mut DtoricContext) {
    if !ctx.is_null() {
        drop(unsafe { Box::from_raw(ctx) });
    }
}

/// Release a string returned through an out-pointer.
///
/// # Safety
/// `s` must originate from this library and not be freed twice; NULL is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn dtoric_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

unsafe fn ctx_ref<'a>(ctx: *const DtoricContext) -> Option<&'a DtoricContext> {
    if ctx.is_null() {
        set_error("null context".into());
        None
    } else {
        Some(unsafe { &*ctx })
    }
}

/// Ambient dimension d.
///
/// # Safety
/// `ctx` must be a live context and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dtoric_dim(ctx: *const DtoricContext, out: *mut usize) -> DtoricStatus {
    let Some(c) = ctx_ref(ctx) else {
        return DtoricStatus::NullPointer;
    };
    if out.is_null() {
        return DtoricStatus::NullPointer;
    }
    *out = c.engine.toric().dim();
    DtoricStatus::Ok
}

/// Number of facets of the cone.
///
/// # Safety
/// `ctx` must be a live context and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dtoric_facet_count(
    ctx: *const DtoricContext,
    out: *mut usize,
) -> DtoricStatus {
    let Some(c) = ctx_ref(ctx) else {
        return DtoricStatus::NullPointer;
    };
    if out.is_null() {
        return DtoricStatus::NullPointer;
    }
    *out = c.engine.toric().facets.len();
    DtoricStatus::Ok
}

/// Whether the cone is simplicial (1) or not (0).
///
/// # Safety
/// `ctx` must be a live context and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dtoric_is_simplicial(
    ctx: *const DtoricContext,
    out: *mut i32,
) -> DtoricStatus {
    let Some(c) = ctx_ref(ctx) else {
        return DtoricStatus::NullPointer;
    };
    if out.is_null() {
        return DtoricStatus::NullPointer;
    }
    *out = c.engine.toric().simplicial as i32;
    DtoricStatus::Ok
}

/// Exact semigroup membership of an integer point of length d.
///
/// # Safety
/// `point` must hold `len` readable values; `ctx` live, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dtoric_member(
    ctx: *const DtoricContext,
    point: *const i64,
    len: usize,
    out: *mut i32,
) -> DtoricStatus {
    let Some(c) = ctx_ref(ctx) else {
        return DtoricStatus::NullPointer;
    };
    if point.is_null() || out.is_null() {
        set_error("null pointer".into());
        return DtoricStatus::NullPointer;
    }
    if len != c.engine.toric().dim() {
        set_error(format!(
            "point has length {len}, expected {}",
            c.engine.toric().dim()
        ));
        return DtoricStatus::InvalidInput;
    }
    let slice = std::slice::from_raw_parts(point, len);
    guard(|| {
        let b: Vec<BigInt> = slice.iter().map(|&x| BigInt::from(x)).collect();
        unsafe { *out = c.engine.member_verdict(&b) as i32 };
        DtoricStatus::Ok
    })
}

fn parse_param(c: &DtoricContext, s: *const c_char) -> Result<Vec<dtoric::rat::Rat>, Error> {
    if s.is_null() {
        return Err(Error::InvalidInput("null parameter string".into()));
    }
    let text = unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|_| Error::InvalidInput("parameter is not valid UTF-8".into()))?;
    let v = parse_rat_vec(text)?;
    if v.len() != c.engine.toric().dim() {
        return Err(Error::InvalidInput(format!(
            "parameter has length {}, expected {}",
            v.len(),
            c.engine.toric().dim()
        )));
    }
    Ok(v)
}

/// Whether two parameters (comma-separated rationals, e.g. "1/2,0") label
/// isomorphic systems.
///
/// # Safety
/// `alpha`, `beta` must be NUL-terminated strings; `ctx` live, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dtoric_equivalent(
    ctx: *const DtoricContext,
    alpha: *const c_char,
    beta: *const c_char,
    out: *mut i32,
) -> DtoricStatus {
    let Some(c) = ctx_ref(ctx) else {
        return DtoricStatus::NullPointer;
    };
    if out.is_null() {
        return DtoricStatus::NullPointer;
    }
    guard(|| {
        let a = match parse_param(c, alpha) {
            Ok(v) => v,
            Err(e) => {
                set_error(e.to_string());
                return status_of(&e);
            }
        };
        let b = match parse_param(c, beta) {
            Ok(v) => v,
            Err(e) => {
                set_error(e.to_string());
                return status_of(&e);
            }
        };
        let cl = Classifier::new(&c.engine);
        unsafe { *out = cl.equivalent(&a, &b) as i32 };
        DtoricStatus::Ok
    })
}

/// Whether the class of a parameter is extreme.
///
/// # Safety
/// `alpha` must be a NUL-terminated string; `ctx` live, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dtoric_is_extreme(
    ctx: *const DtoricContext,
    alpha: *const c_char,
    out: *mut i32,
) -> DtoricStatus {
    let Some(c) = ctx_ref(ctx) else {
        return DtoricStatus::NullPointer;
    };
    if out.is_null() {
        return DtoricStatus::NullPointer;
    }
    guard(|| {
        let a = match parse_param(c, alpha) {
            Ok(v) => v,
            Err(e) => {
                set_error(e.to_string());
                return status_of(&e);
            }
        };
        let cl = Classifier::new(&c.engine);
        unsafe { *out = cl.is_extreme(&a) as i32 };
        DtoricStatus::Ok
    })
}

/// Whether the strict sign system of a parameter is feasible.
///
/// # Safety
/// `alpha` must be a NUL-terminated string; `ctx` live, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dtoric_rpos_nonempty(
    ctx: *const DtoricContext,
    alpha: *const c_char,
    out: *mut i32,
) -> DtoricStatus {
    let Some(c) = ctx_ref(ctx) else {
        return DtoricStatus::NullPointer;
    };
    if out.is_null() {
        return DtoricStatus::NullPointer;
    }
    guard(|| {
        let a = match parse_param(c, alpha) {
            Ok(v) => v,
            Err(e) => {
                set_error(e.to_string());
                return status_of(&e);
            }
        };
        unsafe { *out = rpos_nonempty(&c.engine, &a) as i32 };
        DtoricStatus::Ok
    })
}

/// Simplicity verdict: 1 = simple on the window, 0 = certified not simple.
/// Pass `window <= 0` for the default window bound.
///
/// # Safety
/// `ctx` must be a live context and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dtoric_is_simple(
    ctx: *const DtoricContext,
    window: i64,
    out: *mut i32,
) -> DtoricStatus {
    let Some(c) = ctx_ref(ctx) else {
        return DtoricStatus::NullPointer;
    };
    if out.is_null() {
        return DtoricStatus::NullPointer;
    }
    guard(|| {
        let t = c.engine.toric();
        let w = if window > 0 {
            Window::with_bound(t, BigInt::from(window))
        } else {
            Window::default_for(t)
        };
        let bound = default_c2_bound(&c.engine);
        match is_simple(&c.engine, &w, &bound) {
            Ok(v) => {
                let bit = matches!(v, SimplicityVerdict::SimpleOnWindow { .. });
                unsafe { *out = bit as i32 };
                DtoricStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                status_of(&e)
            }
        }
    })
}

fn emit_json(value: serde_json::Value, out: *mut *mut c_char) -> DtoricStatus {
    let s = serde_json::to_string_pretty(&value).unwrap();
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            DtoricStatus::Ok
        }
        Err(_) => {
            set_error("report contains interior NUL".into());
            DtoricStatus::InternalError
        }
    }
}

/// Full analysis report as a JSON string (free with `dtoric_string_free`).
/// Pass `window <= 0` for the default window bound.
///
/// # Safety
/// `ctx` must be a live context and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dtoric_analyze_json(
    ctx: *const DtoricContext,
    window: i64,
    out: *mut *mut c_char,
) -> DtoricStatus {
    let Some(c) = ctx_ref(ctx) else {
        return DtoricStatus::NullPointer;
    };
    if out.is_null() {
        return DtoricStatus::NullPointer;
    }
    guard(|| {
        let engine = &c.engine;
        let t = engine.toric();
        let w = if window > 0 {
            Window::with_bound(t, BigInt::from(window))
        } else {
            Window::default_for(t)
        };
        let bound = default_c2_bound(engine);
        let classifier = Classifier::new(engine);
        let scored = engine.is_scored(&w);
        let s2 = engine.satisfies_s2(&w);
        let result: Result<serde_json::Value, Error> = (|| {
            let c2 = if t.simplicial {
                serde_json::json!({"c2": "holds", "reason": "simplicial",
                                   "certification": report::CERT_EXACT})
            } else {
                report::c2_json(t, &check_c2(engine, &bound)?)
            };
            let simple = is_simple(engine, &w, &bound)?;
            let prim = enumerate_prim(&classifier, &w)?;
            Ok(serde_json::json!({
                "cone": report::toric_json(t),
                "c0": engine.check_c0(),
                "scored": report::scored_json(&scored),
                "s2": report::s2_json(t, &s2),
                "c2": c2,
                "simple": report::simple_json(t, &simple),
                "prim": report::prim_json(t, &prim),
                "window": w.bound.to_string(),
            }))
        })();
        match result {
            Ok(v) => emit_json(v, out),
            Err(e) => {
                set_error(e.to_string());
                status_of(&e)
            }
        }
    })
}

/// All E-sets of a parameter as a JSON string (free with
/// `dtoric_string_free`).
///
/// # Safety
/// `alpha` must be a NUL-terminated string; `ctx` live, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dtoric_signature_json(
    ctx: *const DtoricContext,
    alpha: *const c_char,
    out: *mut *mut c_char,
) -> DtoricStatus {
    let Some(c) = ctx_ref(ctx) else {
        return DtoricStatus::NullPointer;
    };
    if out.is_null() {
        return DtoricStatus::NullPointer;
    }
    guard(|| {
        let a = match parse_param(c, alpha) {
            Ok(v) => v,
            Err(e) => {
                set_error(e.to_string());
                return status_of(&e);
            }
        };
        let cl = Classifier::new(&c.engine);
        let sig = cl.signature(&a);
        let v = serde_json::json!({
            "alpha": dtoric::rat::format_rat_vec(&a),
            "esets": report::signature_json(c.engine.toric(), &sig),
            "extreme": cl.is_extreme(&a),
        });
        emit_json(v, out)
    })
}
