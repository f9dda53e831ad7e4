use std::ffi::c_char;
use std::ptr;

use qspherical_ffi::*;

fn c(re: f64, im: f64) -> QsComplex {
    QsComplex { re, im }
}

fn context(q: f64) -> *mut QsContext {
    let mut ctx = ptr::null_mut();
    assert_eq!(unsafe { qs_context_new(q, 0.0, &mut ctx) }, QsStatus::Ok);
    assert!(!ctx.is_null());
    ctx
}

fn last_error() -> String {
    let n = unsafe { qs_last_error(ptr::null_mut(), 0) };
    let mut buf = vec![0 as c_char; n + 1];
    unsafe { qs_last_error(buf.as_mut_ptr(), buf.len()) };
    let bytes: Vec<u8> = buf[..n].iter().map(|&b| b as u8).collect();
    String::from_utf8(bytes).unwrap()
}

fn blank() -> QsClassification {
    QsClassification {
        kind: QsClassKind::Principal,
        reason: QsReason::None,
        t: f64::NAN,
        s: f64::NAN,
    }
}

#[test]
fn bad_context_reports_an_argument_error() {
    let mut ctx = std::ptr::NonNull::<QsContext>::dangling().as_ptr();
    assert_eq!(unsafe { qs_context_new(1.5, 0.0, &mut ctx) }, QsStatus::Argument);
    assert!(ctx.is_null());
    assert!(last_error().contains("q"), "{}", last_error());
    assert_eq!(
        unsafe { qs_context_new(0.5, 0.0, ptr::null_mut()) },
        QsStatus::NullPointer
    );
}

#[test]
fn classification() {
    let ctx = context(0.5);
    let mut out = blank();
    unsafe {
        assert_eq!(qs_classify_su2(ctx, c(0.5, 0.0), &mut out), QsStatus::Ok);
        assert_eq!(out.kind, QsClassKind::Complementary);
        assert!((out.t - 0.5).abs() < 1e-12);

        let two_rho = [c(0.0, 0.0), c(2.0, 0.0), c(-2.0, 0.0)];
        assert_eq!(qs_classify_su3(ctx, two_rho.as_ptr(), &mut out), QsStatus::Ok);
        assert_eq!(out.kind, QsClassKind::Character);
        assert_eq!(out.reason, QsReason::None);

        let bad = [c(1.0, 0.0), c(2.0, 0.0), c(-3.0, 0.0)];
        assert_eq!(qs_classify_su3(ctx, bad.as_ptr(), &mut out), QsStatus::Ok);
        assert_eq!(out.kind, QsClassKind::NotUnitarizable);
        assert_eq!(out.reason, QsReason::NoInvariantForm);

        let not_trace_zero = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        assert_eq!(
            qs_classify_su3(ctx, not_trace_zero.as_ptr(), &mut out),
            QsStatus::Argument
        );
        assert_eq!(qs_classify_su3(ctx, ptr::null(), &mut out), QsStatus::NullPointer);
        assert_eq!(
            qs_classify_su2(ptr::null(), c(0.0, 0.0), &mut out),
            QsStatus::NullPointer
        );
        qs_context_free(ctx);
    }
}

#[test]
fn intertwiner_values_agree() {
    let ctx = context(0.5);
    let nu = c(0.3, 0.2);
    let mut written = 0usize;
    let mut buf = vec![c(0.0, 0.0); 16];
    unsafe {
        assert_eq!(
            qs_intertwiner_numeric(ctx, nu, 8, buf.as_mut_ptr(), 2, &mut written),
            QsStatus::BufferTooSmall
        );
        assert_eq!(written, 7);
        assert_eq!(
            qs_intertwiner_numeric(ctx, nu, 8, buf.as_mut_ptr(), buf.len(), &mut written),
            QsStatus::Ok
        );
        assert_eq!(written, 7);
        for (s, v) in buf[..written].iter().enumerate() {
            let mut closed = c(0.0, 0.0);
            assert_eq!(qs_intertwiner_closed_form(ctx, nu, s as u32, &mut closed), QsStatus::Ok);
            assert!((v.re - closed.re).hypot(v.im - closed.im) < 1e-7);
        }
        let mut closed = c(0.0, 0.0);
        assert_eq!(
            qs_intertwiner_closed_form(ctx, c(1.0, 0.0), 2, &mut closed),
            QsStatus::Singular
        );
        assert!(last_error().contains("r = 1"), "{}", last_error());
        qs_context_free(ctx);
    }
}

#[test]
fn fiber_and_qdim() {
    let ctx = context(0.5);
    let (mut allowed, mut t) = (false, 0.0);
    let (mut qd, mut dim) = (0.0, 0u64);
    unsafe {
        assert_eq!(qs_fiber_dimension(ctx, 5.25, &mut allowed, &mut t), QsStatus::Ok);
        assert!(allowed && (t - 2.0).abs() < 1e-9);
        assert_eq!(qs_fiber_dimension(ctx, 4.0, &mut allowed, &mut t), QsStatus::Ok);
        assert!(!allowed);
        assert_eq!(qs_fiber_dimension(ctx, 2.0, &mut allowed, &mut t), QsStatus::Argument);

        let parts = [1u32, 0, 0];
        assert_eq!(qs_qdim(ctx, 3, parts.as_ptr(), 3, &mut qd, &mut dim), QsStatus::Ok);
        assert_eq!(dim, 3);
        assert!((qd - 5.25).abs() < 1e-12);
        let parts = [0u32, 1, 0];
        assert_eq!(
            qs_qdim(ctx, 3, parts.as_ptr(), 3, &mut qd, &mut dim),
            QsStatus::Argument
        );
        qs_context_free(ctx);
    }
}

#[test]
fn model_handle() {
    let ctx = context(0.5);
    let mut model = ptr::null_mut();
    let mut v = c(f64::NAN, f64::NAN);
    unsafe {
        assert_eq!(qs_model_new(ctx, c(0.4, 0.0), 3, &mut model), QsStatus::Ok);
        assert_eq!(qs_model_dim(model), 16);
        assert_eq!(qs_model_entry(model, 0, 0, 0, &mut v), QsStatus::Ok);
        assert!(v.re.is_finite() && v.im.is_finite());
        assert_eq!(qs_model_entry(model, 4, 0, 0, &mut v), QsStatus::Argument);
        assert_eq!(qs_model_entry(model, 0, 16, 0, &mut v), QsStatus::Argument);
        qs_model_free(model);
        assert_eq!(qs_model_dim(ptr::null()), 0);
        qs_model_free(ptr::null_mut());
        qs_context_free(ctx);
    }
}

#[test]
fn header_is_generated() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/qspherical.h")).unwrap();
    for name in [
        "qs_context_new",
        "qs_classify_su3",
        "qs_model_entry",
        "QS_STATUS_OK",
        "typedef struct QsContext",
    ] {
        assert!(h.contains(name), "{name} missing from header");
    }
}
