//! Irreducible type-1 modules of `U_q(𝔰𝔩₂)` and the coproduct.
//!
//! Basis index `i = 0..=2s` carries weight `m = s − i`; `K v_m = q^{2m} v_m`.
//! The raising and lowering operators are normalized so that `E† = FK` and
//! `F† = K⁻¹E`, which makes the standard basis orthonormal for a
//! `*`-representation and keeps tensor products unitary.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::qnum::QContext;

pub type CMat = DMatrix<Complex64>;

#[derive(Debug, Clone, PartialEq)]
pub struct SU2Module {
    pub two_s: u32,
    pub e: CMat,
    pub f: CMat,
    pub k: CMat,
    pub k_inv: CMat,
}

impl SU2Module {
    pub fn dim(&self) -> usize {
        self.two_s as usize + 1
    }

    pub fn spin(&self) -> f64 {
        self.two_s as f64 / 2.0
    }

    /// Weight `m` of basis vector `i`.
    pub fn weight(&self, i: usize) -> f64 {
        self.spin() - i as f64
    }
}

pub fn uq_sl2_module(ctx: &QContext, two_s: u32) -> SU2Module {
    let d = two_s as usize + 1;
    let s = two_s as f64 / 2.0;
    let zero = Complex64::new(0.0, 0.0);
    let mut e = CMat::from_element(d, d, zero);
    let mut f = CMat::from_element(d, d, zero);
    let mut k = CMat::from_element(d, d, zero);
    let mut k_inv = CMat::from_element(d, d, zero);
    let qi = |x: f64| ctx.q_int_real(x);
    for i in 0..d {
        let m = s - i as f64;
        k[(i, i)] = ctx.q_power_real(2.0 * m).into();
        k_inv[(i, i)] = ctx.q_power_real(-2.0 * m).into();
        if i > 0 {
            // v_m → v_{m+1}, then K^{1/2} on the target
            let c = (qi(s - m) * qi(s + m + 1.0)).sqrt() * ctx.q_power_real(m + 1.0);
            e[(i - 1, i)] = c.into();
        }
        if i + 1 < d {
            // K^{-1/2} on the source, then v_m → v_{m−1}
            let c = (qi(s + m) * qi(s - m + 1.0)).sqrt() * ctx.q_power_real(-m);
            f[(i + 1, i)] = c.into();
        }
    }
    SU2Module { two_s, e, f, k, k_inv }
}

/// Generators acting on a (possibly reducible) module.
#[derive(Debug, Clone, PartialEq)]
pub struct Action {
    pub e: CMat,
    pub f: CMat,
    pub k: CMat,
    pub k_inv: CMat,
}

impl From<&SU2Module> for Action {
    fn from(m: &SU2Module) -> Self {
        Action {
            e: m.e.clone(),
            f: m.f.clone(),
            k: m.k.clone(),
            k_inv: m.k_inv.clone(),
        }
    }
}

/// `Δ(E) = E⊗1 + K⊗E`, `Δ(F) = F⊗K⁻¹ + 1⊗F`, `Δ(K) = K⊗K` on `V₁ ⊗ V₂`
/// (second factor varies fastest).
pub fn tensor_action(a: &Action, b: &Action) -> Action {
    let i1 = CMat::identity(a.e.nrows(), a.e.ncols());
    let i2 = CMat::identity(b.e.nrows(), b.e.ncols());
    Action {
        e: a.e.kronecker(&i2) + a.k.kronecker(&b.e),
        f: a.f.kronecker(&b.k_inv) + i1.kronecker(&b.f),
        k: a.k.kronecker(&b.k),
        k_inv: a.k_inv.kronecker(&b.k_inv),
    }
}

/// Central element `EF + (q⁻¹K + qK⁻¹)/(q − q⁻¹)²`.
pub fn casimir(ctx: &QContext, a: &Action) -> CMat {
    let q = ctx.q();
    let d = (q - 1.0 / q).powi(2);
    &a.e * &a.f + (&a.k * Complex64::from(1.0 / q) + &a.k_inv * Complex64::from(q)) / Complex64::from(d)
}

/// Value of the Casimir on `V(s)`.
pub fn casimir_eigenvalue(ctx: &QContext, two_s: u32) -> f64 {
    let q = ctx.q();
    let x = two_s as f64 + 1.0;
    (ctx.q_power_real(x) + ctx.q_power_real(-x)) / (q - 1.0 / q).powi(2)
}

/// Relative Frobenius distance `‖a − b‖/max(1, ‖b‖)`.
#[cfg(test)]
pub(crate) fn rel_diff(a: &CMat, b: &CMat) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}
