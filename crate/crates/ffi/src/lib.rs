//! C ABI over `qspherical`.
//!
//! Every function returns a `QsStatus`. On failure the message is kept in a
//! thread-local slot readable with `qs_last_error`. Handles are opaque and
//! must be released with the matching `*_free`. Panics never cross the
//! boundary; they come back as `QS_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use qspherical::suq2::PrincipalSeriesModel;
use qspherical::{
    classify_su2, classify_su3, fiber_dimension_allowed, intertwiner_closed_form, intertwiner_numeric,
    principal_series, qdim, CartanData, DominantWeight, Error, NonUnitaryReason, QContext, UnitaryClass, Weight,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QsStatus {
    Ok = 0,
    Argument = 1,
    Singular = 2,
    Truncation = 3,
    Consistency = 4,
    NullPointer = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QsClassKind {
    Principal = 0,
    Complementary = 1,
    Character = 2,
    NotUnitarizable = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QsReason {
    None = 0,
    NoInvariantForm = 1,
    FormIndefinite = 2,
    NormBoundViolated = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QsComplex {
    pub re: f64,
    pub im: f64,
}

/// `t` and `s` are only meaningful for `QS_CLASS_KIND_COMPLEMENTARY`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QsClassification {
    pub kind: QsClassKind,
    pub reason: QsReason,
    pub t: f64,
    pub s: f64,
}

/// Opaque deformation context.
pub struct QsContext(QContext);

/// Opaque truncated principal-series model.
pub struct QsModel(PrincipalSeriesModel);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: QsStatus, msg: impl Into<String>) -> QsStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> QsStatus {
    let status = match e {
        Error::Argument(_) => QsStatus::Argument,
        Error::SingularParameter { .. } => QsStatus::Singular,
        Error::TruncationTooSmall { .. } => QsStatus::Truncation,
        Error::Consistency(_) => QsStatus::Consistency,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> QsStatus) -> QsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(QsStatus::Panic, "internal panic"),
    }
}

macro_rules! deref {
    ($p:expr, $name:literal) => {
        match unsafe { $p.as_ref() } {
            Some(v) => v,
            None => return fail(QsStatus::NullPointer, concat!($name, " is null")),
        }
    };
}

macro_rules! out {
    ($p:expr, $name:literal) => {
        match unsafe { $p.as_mut() } {
            Some(v) => v,
            None => return fail(QsStatus::NullPointer, concat!($name, " is null")),
        }
    };
}

macro_rules! tryq {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return from_error(e),
        }
    };
}

fn z(c: QsComplex) -> Complex64 {
    Complex64::new(c.re, c.im)
}

fn to_c(v: Complex64) -> QsComplex {
    QsComplex { re: v.re, im: v.im }
}

fn classification(class: UnitaryClass) -> QsClassification {
    let (kind, t, s) = match class {
        UnitaryClass::Principal => (QsClassKind::Principal, 0.0, 0.0),
        UnitaryClass::Complementary { t, s } => (QsClassKind::Complementary, t, s),
        UnitaryClass::Character => (QsClassKind::Character, 0.0, 0.0),
        UnitaryClass::NotUnitarizable { .. } => (QsClassKind::NotUnitarizable, 0.0, 0.0),
    };
    let reason = match class.reason() {
        None => QsReason::None,
        Some(NonUnitaryReason::NoInvariantForm) => QsReason::NoInvariantForm,
        Some(NonUnitaryReason::FormIndefinite) => QsReason::FormIndefinite,
        Some(NonUnitaryReason::NormBoundViolated) => QsReason::NormBoundViolated,
    };
    QsClassification { kind, reason, t, s }
}

/// Copy the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length without the NUL, or
/// 0 if there is no error. `buf` may be null to query the length.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn qs_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// `tol <= 0` selects the default tolerance.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qs_context_new(q: f64, tol: f64, out: *mut *mut QsContext) -> QsStatus {
    guard(|| {
        let out = out!(out, "out");
        *out = ptr::null_mut();
        let ctx = tryq!(if tol > 0.0 {
            QContext::with_tol(q, tol)
        } else {
            QContext::new(q)
        });
        *out = Box::into_raw(Box::new(QsContext(ctx)));
        QsStatus::Ok
    })
}

/// # Safety
/// `ctx` must be null or come from `qs_context_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn qs_context_free(ctx: *mut QsContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// # Safety
/// `ctx` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qs_classify_su2(ctx: *const QsContext, nu: QsComplex, out: *mut QsClassification) -> QsStatus {
    guard(|| {
        let ctx = deref!(ctx, "ctx");
        let out = out!(out, "out");
        *out = classification(classify_su2(&ctx.0, z(nu)));
        QsStatus::Ok
    })
}

/// `nu` points to three coordinates summing to zero.
///
/// # Safety
/// `ctx` and `out` must be valid; `nu` must point to 3 values.
#[no_mangle]
pub unsafe extern "C" fn qs_classify_su3(
    ctx: *const QsContext,
    nu: *const QsComplex,
    out: *mut QsClassification,
) -> QsStatus {
    guard(|| {
        let ctx = deref!(ctx, "ctx");
        let out = out!(out, "out");
        if nu.is_null() {
            return fail(QsStatus::NullPointer, "nu is null");
        }
        let coords = std::slice::from_raw_parts(nu, 3).iter().map(|&c| z(c)).collect();
        let w = tryq!(Weight::new(coords));
        *out = classification(tryq!(classify_su3(&ctx.0, &w)));
        QsStatus::Ok
    })
}

/// Closed-form intertwiner eigenvalue `T^s(ν)`.
///
/// # Safety
/// `ctx` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qs_intertwiner_closed_form(
    ctx: *const QsContext,
    nu: QsComplex,
    s: u32,
    out: *mut QsComplex,
) -> QsStatus {
    guard(|| {
        let ctx = deref!(ctx, "ctx");
        let out = out!(out, "out");
        *out = to_c(tryq!(intertwiner_closed_form(&ctx.0, z(nu), s)));
        QsStatus::Ok
    })
}

/// Least-squares intertwiner on the model truncated at `s_max`. Writes the
/// values for `s = 0..` into `out` (capacity `cap`) and their count into
/// `written`. If `cap` is too small nothing is written, `written` holds the
/// required count and the status is `QS_STATUS_BUFFER_TOO_SMALL`.
///
/// # Safety
/// `ctx` and `written` must be valid; `out` must point to `cap` values.
#[no_mangle]
pub unsafe extern "C" fn qs_intertwiner_numeric(
    ctx: *const QsContext,
    nu: QsComplex,
    s_max: u32,
    out: *mut QsComplex,
    cap: usize,
    written: *mut usize,
) -> QsStatus {
    guard(|| {
        let ctx = deref!(ctx, "ctx");
        let written = out!(written, "written");
        *written = 0;
        let values = tryq!(intertwiner_numeric(&ctx.0, z(nu), s_max));
        if values.len() > cap || out.is_null() {
            *written = values.len();
            return fail(
                QsStatus::BufferTooSmall,
                format!("need room for {} values", values.len()),
            );
        }
        for (k, v) in values.iter().enumerate() {
            *out.add(k) = to_c(*v);
        }
        *written = values.len();
        QsStatus::Ok
    })
}

/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn qs_fiber_dimension(
    ctx: *const QsContext,
    dim: f64,
    allowed: *mut bool,
    t: *mut f64,
) -> QsStatus {
    guard(|| {
        let ctx = deref!(ctx, "ctx");
        let allowed = out!(allowed, "allowed");
        let t = out!(t, "t");
        let v = tryq!(fiber_dimension_allowed(&ctx.0, dim));
        *allowed = v.allowed;
        *t = v.t;
        QsStatus::Ok
    })
}

/// Quantum and classical dimension of the `SU_q(n)` irreducible with
/// partition `parts[0..len]` (length `n`, last entry 0, or `n − 1`).
///
/// # Safety
/// `ctx`, `qdim_out` and `dim_out` must be valid; `parts` must point to `len` values.
#[no_mangle]
pub unsafe extern "C" fn qs_qdim(
    ctx: *const QsContext,
    n: usize,
    parts: *const u32,
    len: usize,
    qdim_out: *mut f64,
    dim_out: *mut u64,
) -> QsStatus {
    guard(|| {
        let ctx = deref!(ctx, "ctx");
        let qdim_out = out!(qdim_out, "qdim_out");
        let dim_out = out!(dim_out, "dim_out");
        if parts.is_null() && len > 0 {
            return fail(QsStatus::NullPointer, "parts is null");
        }
        let parts: &[u32] = if len == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(parts, len)
        };
        let cd = tryq!(CartanData::new(n));
        let lam = tryq!(DominantWeight::new(&cd, parts));
        *qdim_out = tryq!(qdim(&ctx.0, &cd, &lam));
        *dim_out = lam.weyl_dimension();
        QsStatus::Ok
    })
}

/// Build the truncated principal series `L(0,ν)` with spins `≤ s_max`.
///
/// # Safety
/// `ctx` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qs_model_new(
    ctx: *const QsContext,
    nu: QsComplex,
    s_max: u32,
    out: *mut *mut QsModel,
) -> QsStatus {
    guard(|| {
        let ctx = deref!(ctx, "ctx");
        let out = out!(out, "out");
        *out = ptr::null_mut();
        let model = tryq!(principal_series(&ctx.0, z(nu), s_max));
        *out = Box::into_raw(Box::new(QsModel(model)));
        QsStatus::Ok
    })
}

/// # Safety
/// `model` must be null or come from `qs_model_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn qs_model_free(model: *mut QsModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Dimension of the truncated space, `(s_max + 1)²`. Returns 0 for null.
///
/// # Safety
/// `model` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn qs_model_dim(model: *const QsModel) -> usize {
    model.as_ref().map_or(0, |m| m.0.dim())
}

/// Entry `(row, col)` of generator `gen` (0 = a, 1 = b, 2 = c, 3 = d).
///
/// # Safety
/// `model` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qs_model_entry(
    model: *const QsModel,
    gen: u32,
    row: usize,
    col: usize,
    out: *mut QsComplex,
) -> QsStatus {
    guard(|| {
        let model = deref!(model, "model");
        let out = out!(out, "out");
        let dim = model.0.dim();
        if gen > 3 || row >= dim || col >= dim {
            return fail(
                QsStatus::Argument,
                format!("entry ({gen}, {row}, {col}) outside 4 generators of size {dim}"),
            );
        }
        *out = to_c(model.0.actions[gen as usize][(row, col)]);
        QsStatus::Ok
    })
}
