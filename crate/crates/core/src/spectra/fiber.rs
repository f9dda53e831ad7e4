//! Admissible dimensions of the fundamental object under a fiber functor.

use serde::Serialize;

use crate::error::{arg, Result};
use crate::qnum::QContext;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiberVerdict {
    pub allowed: bool,
    /// The `t ≥ 0` with `N = q^t + 1 + q^{−t}`.
    pub t: f64,
}

/// Write `N = q^t + 1 + q^{−t}`; the dimension is allowed when `t ≤ 1` or
/// `t = 2`.
pub fn fiber_dimension_allowed(ctx: &QContext, dim: f64) -> Result<FiberVerdict> {
    if !dim.is_finite() || dim < 3.0 - ctx.tol() {
        return arg(format!("dimension {dim} is below the minimum 3 of q^t + 1 + q^-t"));
    }
    // x = q^t is the smaller root of x² − (N−1)x + 1 = 0
    let b = dim - 1.0;
    let disc = (b * b - 4.0).max(0.0);
    let x = (b - disc.sqrt()) / 2.0;
    let t = (x.ln() / ctx.log_q()).max(0.0);
    let tol = ctx.tol().max(1e-12);
    Ok(FiberVerdict {
        allowed: t <= 1.0 + tol || (t - 2.0).abs() <= tol,
        t,
    })
}
