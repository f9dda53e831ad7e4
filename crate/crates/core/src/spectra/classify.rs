//! The norm-bound test and the spherical unitary dual of `SL_q(3,ℂ)`.

use num_complex::Complex64;
use serde::Serialize;

use super::forms::has_invariant_form;
use super::{first_dominant_weights, NonUnitaryReason, UnitaryClass};
use crate::charrep::{char_value, qdim};
use crate::error::{arg, Result};
use crate::qnum::{QContext, RealLattice};
use crate::weyl::{permutations, x_reduce, CartanData, DominantWeight, Weight};

/// Which weight the character inequality is evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum NormBoundMode {
    /// `μ = ν`.
    #[default]
    AsDisplayed,
    /// `μ = ν − 2ρ`, reading the module as `V(0, μ + 2ρ)`.
    Shifted,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormBound {
    pub holds: bool,
    pub first_violator: Option<DominantWeight>,
}

/// `|Tr_λ(K_μ)| ≤ Tr_λ(K_{2ρ})` for every `λ` in the set, relative to `tol`.
pub fn norm_bound_test(ctx: &QContext, cd: &CartanData, mu: &Weight, lambdas: &[DominantWeight]) -> Result<NormBound> {
    cd.check(mu)?;
    for lam in lambdas {
        let lhs = char_value(ctx, cd, lam, mu)?.norm();
        let rhs = qdim(ctx, cd, lam)?;
        if lhs > rhs + ctx.tol() * rhs.max(1.0) {
            return Ok(NormBound {
                holds: false,
                first_violator: Some(lam.clone()),
            });
        }
    }
    Ok(NormBound {
        holds: true,
        first_violator: None,
    })
}

/// The norm bound for the module with spherical parameter `ν`.
pub fn norm_bound_for_parameter(
    ctx: &QContext,
    cd: &CartanData,
    nu: &Weight,
    lambdas: &[DominantWeight],
    mode: NormBoundMode,
) -> Result<NormBound> {
    let mu = match mode {
        NormBoundMode::AsDisplayed => nu.clone(),
        NormBoundMode::Shifted => nu.sub(&cd.two_rho()),
    };
    norm_bound_test(ctx, cd, &mu, lambdas)
}

/// Classification together with the Weyl element and the imaginary
/// weight-lattice shift (in units of `2π/|log q|`) that realize it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Su3Classification {
    pub class: UnitaryClass,
    /// `ξ = wν` reads `ξ_k = ν_{w(k)}`.
    pub weyl_element: Option<Vec<usize>>,
    pub lattice_shift: Option<Vec<f64>>,
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn imag(y: f64) -> Complex64 {
    Complex64::new(0.0, y)
}

pub fn classify_su3(ctx: &QContext, nu: &Weight) -> Result<UnitaryClass> {
    Ok(classify_su3_detailed(ctx, nu)?.class)
}

pub fn classify_su3_detailed(ctx: &QContext, nu: &Weight) -> Result<Su3Classification> {
    if nu.len() != 3 {
        return arg(format!("classify_su3 needs 3 coordinates, got {}", nu.len()));
    }
    let cd = CartanData::sl3();
    let nu = x_reduce(ctx, &cd, nu)?.rep;
    let period = ctx.lattice_period();
    let zero = RealLattice::Finite(vec![0.0]);
    let perms = permutations(3);
    let two_rho = cd.two_rho();
    let on_lattice = |z: Complex64| ctx.lattice_member(z, &zero, period);
    // imaginary vector in i·period·P: all pairwise differences in i·period·ℤ
    let shift_of = |im: &[f64]| -> Vec<f64> { im.iter().map(|y| y / period).collect() };

    // (iii) ν ≡ w·2ρ modulo i·period·P
    for w in &perms {
        let d = nu.permute(w).sub(&two_rho);
        let c = d.coords();
        if on_lattice(c[0] - c[1]) && on_lattice(c[1] - c[2]) {
            return Ok(Su3Classification {
                class: UnitaryClass::Character,
                weyl_element: Some(w.clone()),
                lattice_shift: Some(shift_of(&d.imag_part())),
            });
        }
    }

    // (ii) wν ≡ (t+is, −t+is, −2is) modulo i·period·P, 0 < t ≤ 1
    for w in &perms {
        let xi = nu.permute(w);
        let c = xi.coords();
        let t = (c[0].re - c[1].re) / 2.0;
        if t <= ctx.tol() || t > 1.0 + ctx.tol() {
            continue;
        }
        if !ctx.lattice_member(real(c[2].re), &zero, 0.0) || !on_lattice(imag(c[0].im - c[1].im)) {
            continue;
        }
        // s is determined modulo period/3 by the third coordinate
        let third = period / 3.0;
        let raw = (c[0].im - c[2].im) / 3.0;
        let mut s = raw - third * (raw / third).round();
        if s.abs() <= ctx.tol() {
            s = 0.0;
        }
        let normal = [s, s, -2.0 * s];
        let shift: Vec<f64> = xi
            .imag_part()
            .iter()
            .zip(normal)
            .map(|(y, n)| (y - n) / period)
            .collect();
        return Ok(Su3Classification {
            class: UnitaryClass::Complementary { t: t.min(1.0), s },
            weyl_element: Some(w.clone()),
            lattice_shift: Some(shift),
        });
    }

    // (i) imaginary
    if nu.coords().iter().all(|z| z.re.abs() <= ctx.tol()) {
        return Ok(Su3Classification {
            class: UnitaryClass::Principal,
            weyl_element: Some(vec![0, 1, 2]),
            lattice_shift: None,
        });
    }

    let reason = if !has_invariant_form(ctx, &cd, &nu)? {
        NonUnitaryReason::NoInvariantForm
    } else if !norm_bound_test(ctx, &cd, &nu, &first_dominant_weights(&cd, 10))?.holds {
        NonUnitaryReason::NormBoundViolated
    } else {
        NonUnitaryReason::FormIndefinite
    };
    Ok(Su3Classification {
        class: UnitaryClass::NotUnitarizable { reason },
        weyl_element: None,
        lattice_shift: None,
    })
}
