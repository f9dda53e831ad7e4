//! The intertwiner `V(0,ν) → V(0,−ν)` and the rank-one unitary dual.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::coeff::Generator;
use super::principal::{basis_spin, principal_series};
use crate::error::{Error, Result};
use crate::qnum::{QContext, RealLattice};
use crate::spectra::{NonUnitaryReason, UnitaryClass};

/// Residual bound for the least-squares intertwiner.
pub const INTERTWINER_RESIDUAL_LIMIT: f64 = 1e-7;

fn check_regular(ctx: &QContext, nu: Complex64) -> Result<()> {
    if ctx.lattice_member(nu, &RealLattice::NonzeroIntegers, ctx.half_period()) {
        return Err(Error::SingularParameter {
            nu: nu.to_string(),
            r: nu.re.round().abs() as i64,
        });
    }
    Ok(())
}

/// `T^s = ∏_{r=1}^{s} (q^{r−ν} − q^{−r+ν}) / (q^{r+ν} − q^{−r−ν})`, normalized
/// by `T⁰ = 1`.
pub fn intertwiner_closed_form(ctx: &QContext, nu: Complex64, s: u32) -> Result<Complex64> {
    check_regular(ctx, nu)?;
    let mut t = Complex64::new(1.0, 0.0);
    for r in 1..=s {
        let r_c = Complex64::from(r as f64);
        let num = ctx.q_power(r_c - nu) - ctx.q_power(-r_c + nu);
        let den = ctx.q_power(r_c + nu) - ctx.q_power(-r_c - nu);
        if den.norm() < ctx.tol() {
            return Err(Error::SingularParameter {
                nu: nu.to_string(),
                r: r as i64,
            });
        }
        t *= num / den;
    }
    Ok(t)
}

/// Solve `T π^ν(x) = π^{−ν}(x) T` for a block-scalar `T` with `T⁰ = 1` on the
/// truncated models, using columns of spin `≤ S_max − 1` where the matrices
/// are exact. Returns `T^s` for `s ≤ S_max − 2`.
///
/// The residual is `‖Mt‖/(‖M‖·‖t‖)` for the stacked homogeneous system `M`.
pub fn intertwiner_numeric(ctx: &QContext, nu: Complex64, s_max: u32) -> Result<Vec<Complex64>> {
    check_regular(ctx, nu)?;
    let a = principal_series(ctx, nu, s_max)?;
    let b = principal_series(ctx, -nu, s_max)?;
    let unknowns = s_max as usize + 1;
    let exact_cols = a.interior(1);
    let mut rows: Vec<Vec<(usize, Complex64)>> = Vec::new();
    for g in Generator::ALL {
        let (pa, pb) = (a.action(g), b.action(g));
        for r in 0..a.dim() {
            for c in 0..exact_cols {
                let (x, y) = (pa[(r, c)], pb[(r, c)]);
                if x.norm() == 0.0 && y.norm() == 0.0 {
                    continue;
                }
                // T^{s(r)}·x − T^{s(c)}·y = 0
                let (sr, sc) = (basis_spin(r) as usize, basis_spin(c) as usize);
                let mut eq = vec![(sr, x)];
                if sr == sc {
                    eq[0].1 -= y;
                } else {
                    eq.push((sc, -y));
                }
                rows.push(eq);
            }
        }
    }
    let full = DMatrix::from_fn(rows.len(), unknowns, |i, j| {
        rows[i]
            .iter()
            .filter(|(k, _)| *k == j)
            .map(|(_, v)| *v)
            .sum::<Complex64>()
    });
    // fix T⁰ = 1 and solve for the rest
    let rhs: DVector<Complex64> = -full.column(0).into_owned();
    let reduced = full.columns(1, unknowns - 1).into_owned();
    let sol = reduced
        .svd(true, true)
        .solve(&rhs, 1e-14)
        .map_err(|e| Error::Consistency(format!("least-squares solve failed: {e}")))?;
    let mut t = DVector::from_element(unknowns, Complex64::new(1.0, 0.0));
    t.rows_mut(1, unknowns - 1).copy_from(&sol);
    let residual = (&full * &t).norm() / (full.norm() * t.norm());
    if !residual.is_finite() || residual >= INTERTWINER_RESIDUAL_LIMIT {
        return Err(Error::TruncationTooSmall {
            residual,
            limit: INTERTWINER_RESIDUAL_LIMIT,
        });
    }
    Ok(t.iter().take(s_max as usize - 1).copied().collect())
}

/// Unitarizability of the spherical principal series of `SL_q(2,ℂ)`.
pub fn classify_su2(ctx: &QContext, nu: Complex64) -> UnitaryClass {
    let tol = ctx.tol();
    let half = ctx.half_period();
    // the imaginary part only matters modulo the period of X
    let period = ctx.lattice_period();
    let im = nu.im - period * (nu.im / period).round();
    if nu.re.abs() <= tol {
        return UnitaryClass::Principal;
    }
    let on_real_line = ctx.lattice_member(Complex64::new(0.0, im), &RealLattice::Finite(vec![0.0]), half);
    if on_real_line {
        let t = nu.re.abs();
        if (t - 1.0).abs() <= tol {
            return UnitaryClass::Character;
        }
        if t < 1.0 {
            let s = if im.abs() <= tol { 0.0 } else { half };
            return UnitaryClass::Complementary { t, s };
        }
        return UnitaryClass::NotUnitarizable {
            reason: NonUnitaryReason::FormIndefinite,
        };
    }
    UnitaryClass::NotUnitarizable {
        reason: NonUnitaryReason::NoInvariantForm,
    }
}
